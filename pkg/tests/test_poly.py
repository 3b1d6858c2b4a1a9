import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mccoy import constructions as C
from mccoy.poly import (
    Polynomial,
    SkewPolynomial,
    YPolynomial,
    apply_scalar_left,
    apply_scalar_right,
    count_polys,
    enumerate_polys,
    order_key,
    poly_mul,
    skew_mul,
)
from mccoy.ring import Element, MixedRingError, ideals

from oracles import convolve
from zoo import ring

POLY_RINGS = ["Z(4)", "Z(6)", "T(2,Z(2))", "M(2,Z(2))", "Rn(3,Z(2))",
              "skewquot(prod(Z(2),Z(2)),swap,2)", "trunc(Z(2),2)"]


def m(R, rows):
    return R.element(rows).index


def test_matrix_unit_pair_multiplies_to_zero():
    T = ring("T(2,Z(2))")
    e11, e12, e22 = (m(T, x) for x in ([[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]))
    f = Polynomial(T, (e12, e11))
    g = Polynomial(T, (e12, T.neg(e22)))
    assert (f * g).is_zero()
    assert f.render() == "([[0,1],[0,0]]) + ([[1,0],[0,0]])*x"


def test_zero_divisor_degrees_in_z4():
    Z4 = C.zmod(4)
    f = Polynomial(Z4, (2,))
    g = Polynomial(Z4, (2, 2))
    assert (f * g).is_zero()
    assert (f * g).degree() is None
    assert Polynomial(Z4, (1, 2, 0, 0)).degree() == 1


def test_product_with_zero_polynomial():
    Z4 = C.zmod(4)
    zero = Polynomial(Z4, ())
    for v in itertools.product(range(4), repeat=3):
        assert (Polynomial(Z4, v) * zero).is_zero()


def test_equality_ignores_trailing_zeros():
    Z4 = C.zmod(4)
    assert Polynomial(Z4, (1, 2)) == Polynomial(Z4, (1, 2, 0))
    assert hash(Polynomial(Z4, (1, 2))) == hash(Polynomial(Z4, (1, 2, 0)))


def test_mixed_rings_are_rejected():
    with pytest.raises(MixedRingError):
        Polynomial(C.zmod(4), (1,)) * Polynomial(C.zmod(4), (1,))
    with pytest.raises(MixedRingError):
        apply_scalar_right(Polynomial(C.zmod(4), (1,)), Element(C.zmod(4), 1))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POLY_RINGS), st.data())
def test_multiplication_is_associative_and_distributive(expr, data):
    R = ring(expr)
    coeffs = st.lists(st.integers(0, R.size - 1), min_size=0, max_size=4)
    f, g, h = (Polynomial(R, tuple(data.draw(coeffs))) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    fg = f * g
    if not f.is_zero() and not g.is_zero() and not fg.is_zero():
        assert fg.degree() <= f.degree() + g.degree()
    assert fg == Polynomial(R, tuple(convolve(R, f.coeffs, g.coeffs)))


def test_random_triples_bulk():
    import random

    rnd = random.Random(11)
    for i in range(10_000):
        R = ring(POLY_RINGS[i % len(POLY_RINGS)])
        f, g, h = (Polynomial(R, tuple(rnd.randrange(R.size) for _ in range(rnd.randint(0, 3))))
                   for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_swap_twists_the_variable():
    P = ring("prod(Z(2),Z(2))")
    alpha = C.endo_swap(P)
    e1, e2, z = P.element([1, 0]).index, P.element([0, 1]).index, P.zero
    x = SkewPolynomial(P, (z, P.one), alpha)
    c = SkewPolynomial(P, (e1,), alpha)
    assert skew_mul(x, c) == SkewPolynomial(P, (z, e2), alpha)
    e1x = SkewPolynomial(P, (z, e1), alpha)
    assert skew_mul(e1x, e1x).is_zero()


def test_skew_with_identity_matches_ordinary_product():
    Z4 = C.zmod(4)
    ident = C.endo_identity(Z4)
    vecs = list(itertools.product(range(4), repeat=3))
    for a, b in itertools.product(vecs, repeat=2):
        assert skew_mul(SkewPolynomial(Z4, a, ident), SkewPolynomial(Z4, b, ident)).trimmed() \
            == poly_mul(Polynomial(Z4, a), Polynomial(Z4, b)).trimmed()


def test_skew_products_need_one_endomorphism():
    P = ring("prod(Z(2),Z(2))")
    f = SkewPolynomial(P, (1,), C.endo_swap(P))
    g = SkewPolynomial(P, (1,), C.endo_identity(P))
    with pytest.raises(MixedRingError):
        skew_mul(f, g)


def test_enumeration_order_and_counts():
    Z2 = C.zmod(2)
    assert [p.render() for p in enumerate_polys(Z2, 1)] == ["(1)", "(1)*x", "(1) + (1)*x"]
    assert sum(1 for _ in enumerate_polys(C.zmod(4), 1)) == 15 == count_polys(C.zmod(4), 1)
    assert count_polys(C.zmod(4), 1, nonzero=False) == 16
    Z3 = C.zmod(3)
    keys = [order_key(p.coeffs, 3) for p in enumerate_polys(Z3, 2)]
    assert keys == sorted(keys)


def test_strided_enumeration_partitions_the_range():
    R = ring("T(2,Z(2))")
    full = [p.coeffs for p in enumerate_polys(R, 1)]
    parts = [[p.coeffs for p in enumerate_polys(R, 1, start=s, step=3)] for s in range(3)]
    assert sorted(sum(parts, [])) == sorted(full)
    assert list(itertools.chain(*itertools.zip_longest(*parts)))[:len(full)] == full


def test_scalar_actions():
    T = ring("T(2,Z(2))")
    e11, e12 = m(T, [[1, 0], [0, 0]]), m(T, [[0, 1], [0, 0]])
    f = Polynomial(T, (e12, e11))
    fs = apply_scalar_right(f, e12)
    assert fs.coeffs == (T.zero, e12) and not fs.is_zero()
    assert apply_scalar_right(f, T.zero).is_zero()
    assert (f * Element(T, e12)) == fs
    assert apply_scalar_left(e12, f).coeffs == (T.zero, T.zero)


def test_square_zero_ideal_annihilates_everything():
    T = ring("T(2,Z(2))")
    K = next(I for I in ideals(T) if len(I) == 2)
    R = C.ideal_as_ring(K)
    for v in itertools.product(range(R.size), repeat=2):
        f = Polynomial(R, v)
        for s in R.elements():
            assert apply_scalar_right(f, s).is_zero() and apply_scalar_left(s, f).is_zero()


def test_polynomials_in_y_over_the_swap_ring():
    P = ring("prod(Z(2),Z(2))")
    alpha = C.endo_swap(P)
    e1, e2, z = P.element([1, 0]).index, P.element([0, 1]).index, P.zero
    sp = lambda *c: SkewPolynomial(P, c, alpha)  # noqa: E731
    f = YPolynomial([sp(e1), sp(z, e1)])
    g = YPolynomial([sp(e2), sp(z, e1)])
    assert (f * g).is_zero()
    assert (g * f).is_zero()
    assert not (f * f).is_zero()
    assert f.render() == "[((1,0))] + [((1,0))*x]*y"
