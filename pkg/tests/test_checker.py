import pytest

from mccoy import checker
from mccoy import constructions as C
from mccoy.checker import (
    PreconditionError,
    check_abelian,
    check_armendariz,
    check_left_mccoy,
    check_reduced,
    check_reversible,
    check_right_mccoy,
    check_semicommutative,
    probe_polyring_mccoy,
    run_check,
    matrix_unit_witness,
    transfer_suite,
    verify_witness,
)
from mccoy.poly import Polynomial, SkewPolynomial, YPolynomial
from mccoy.ring import UnsupportedOperation, left_annihilator, opposite, right_annihilator
from mccoy.suite import capped_degree
from mccoy.verdicts import FAILS, HOLDS, REFUTED, VERIFIED, Property, Verdict, Witness

from oracles import naive_armendariz, naive_right_mccoy
from zoo import ring, small_zoo, zoo


def e(R, rows):
    return R.element(rows).index


def t2_pair():
    T = ring("T(2,Z(2))")
    e11, e12, e22 = (e(T, m) for m in ([[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [0, 1]]))
    return T, Polynomial(T, (e12, e11)), Polynomial(T, (e12, T.neg(e22)))


# --- examples ---------------------------------------------------------------


def test_t2_is_not_right_mccoy_and_the_matrix_unit_pair_reverifies():
    T, f, g = t2_pair()
    v = check_right_mccoy(T, 1)
    assert v.outcome == REFUTED and v.bound == 1
    assert v.witness.f.degree() <= 1 and v.witness.g.degree() <= 1
    assert verify_witness(T, v.witness).ok
    w = Witness(Property.RIGHT_MCCOY, f, g, side="right")
    assert verify_witness(T, w).ok


def test_m2_z4_is_not_right_mccoy():
    v = check_right_mccoy(ring("M(2,Z(4))"), 1)
    assert v.refuted and verify_witness(ring("M(2,Z(4))"), v.witness).ok


def test_commutative_rings_verify():
    assert check_right_mccoy(ring("Z(4)"), 3).outcome == VERIFIED
    assert check_left_mccoy(ring("prod(Z(2),Z(2))"), 2).outcome == VERIFIED
    assert check_armendariz(ring("Z(2)"), 2).outcome == VERIFIED


def test_v_ring_verifies_at_degree_two():
    v = check_right_mccoy(ring("V(Z(2))"), 2)
    assert v.outcome == VERIFIED and v.bound == 2
    assert str(v) == "VerifiedUpTo(2)"


def test_left_witness_has_trivial_left_annihilator():
    T = ring("T(2,Z(2))")
    v = check_left_mccoy(T, 1)
    assert v.refuted and v.witness.side == "left"
    g = v.witness.g
    assert {x.index for x in left_annihilator(T, g.coeffs)} == {T.zero}
    assert verify_witness(T, v.witness).ok


def test_rn4_separates_mccoy_from_armendariz():
    R = ring("Rn(4,Z(2))")
    a = check_armendariz(R, 1)
    assert a.refuted and a.witness.cross is not None
    assert verify_witness(R, a.witness).ok
    assert check_right_mccoy(R, 1).outcome == VERIFIED


def test_element_properties():
    T = ring("T(2,Z(2))")
    v = check_reversible(T)
    a, b = v.witness.elements
    assert v.outcome == FAILS
    # first violating pair in index order; the e12, e11 pair also violates
    first = next((x, y) for x in T.elements() for y in T.elements()
                 if T.mul(x, y) == T.zero and T.mul(y, x) != T.zero)
    assert (a, b) == first == (e(T, [[0, 0], [0, 1]]), e(T, [[0, 1], [0, 0]]))
    e12, e11 = e(T, [[0, 1], [0, 0]]), e(T, [[1, 0], [0, 0]])
    assert T.mul(e12, e11) == T.zero and T.mul(e11, e12) != T.zero
    assert check_abelian(ring("V(Z(2))")).outcome == FAILS
    r = check_reduced(ring("Z(4)"))
    assert r.outcome == FAILS and r.witness.elements == (2,)
    assert check_reduced(ring("Z(5)")).outcome == HOLDS
    assert check_semicommutative(T).outcome == FAILS
    for prop in (Property.REVERSIBLE, Property.SEMICOMMUTATIVE, Property.ABELIAN):
        v = run_check(T, prop)
        assert v.bound is None and verify_witness(T, v.witness).ok


def test_structural_rings_and_bad_degrees_are_rejected(monkeypatch):
    monkeypatch.setenv("MCCOY_TABLE_THRESHOLD", "8")
    big = C.matrix_ring(2, C.zmod(2))
    with pytest.raises(UnsupportedOperation):
        check_right_mccoy(big, 1)
    with pytest.raises(UnsupportedOperation):
        check_reduced(big)
    monkeypatch.delenv("MCCOY_TABLE_THRESHOLD")
    for D in (0, -1, 1.5):
        with pytest.raises(ValueError):
            check_right_mccoy(ring("Z(2)"), D)


# --- witness verification ----------------------------------------------------


def test_verify_witness_names_the_failing_clause():
    T, f, _ = t2_pair()
    w = Witness(Property.RIGHT_MCCOY, f, Polynomial(T, ()), side="right")
    assert verify_witness(T, w).failed == ["g nonzero"]
    Z4 = ring("Z(4)")
    w = Witness(Property.RIGHT_MCCOY, Polynomial(Z4, (2,)), Polynomial(Z4, (2, 2)), side="right")
    report = verify_witness(Z4, w)
    assert report.failed == ["annihilator trivial"]
    assert {x.index for x in right_annihilator(Z4, [2])} == {0, 2}


def test_verify_witness_rejects_foreign_polynomials_and_wrong_sides():
    T, f, g = t2_pair()
    w = Witness(Property.RIGHT_MCCOY, f, g, side="right")
    assert not verify_witness(ring("M(2,Z(2))"), w).ok
    bad_side = Witness(Property.RIGHT_MCCOY, f, g, side="left")
    assert "side matches" in verify_witness(T, bad_side).failed
    arm = Witness(Property.ARMENDARIZ, f, g, cross=(1, 1))
    assert verify_witness(T, arm).failed == ["cross product nonzero"]


def test_verdict_requires_witness_exactly_for_negative_outcomes():
    with pytest.raises(ValueError):
        Verdict(Property.RIGHT_MCCOY, 1, REFUTED)
    with pytest.raises(ValueError):
        Verdict(Property.REDUCED, None, "maybe")


# --- matrix-unit witnesses -------------------------------------------------------


@pytest.mark.parametrize("base", ["Z(2)", "Z(4)"])
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("side", ["left", "right"])
@pytest.mark.parametrize("ambient", ["M", "T"])
def test_matrix_unit_witnesses(base, n, side, ambient):
    R = ring(base)
    w = matrix_unit_witness(n, R, side, ambient)
    S = w.f.ring
    assert S.meta["n"] == n and w.f.degree() == 1 and w.g.degree() == 1
    assert verify_witness(S, w).ok


def test_padded_block_placement():
    Z2 = ring("Z(2)")
    w = matrix_unit_witness(3, Z2, "right", "M")
    M = w.f.ring
    assert M.codec.decode(w.f.coeffs[0]) == (0, 1, 0, 0, 0, 0, 0, 0, 1)
    assert M.codec.decode(w.g.coeffs[1]) == (0, 0, 0, 0, 1, 0, 0, 0, 0)
    wl = matrix_unit_witness(3, Z2, "left", "M")
    assert M.codec.decode(wl.g.coeffs[1])[8] == 1 and M.codec.decode(wl.f.coeffs[0])[8] == 0


def test_matrix_unit_witness_errors():
    with pytest.raises(ValueError):
        matrix_unit_witness(1, ring("Z(2)"), "right")
    with pytest.raises(ValueError):
        matrix_unit_witness(2, ring("Z(2)"), "up")
    with pytest.raises(ValueError):
        matrix_unit_witness(2, ring("Z(2)"), "right", ring("M(2,Z(4))"))


# --- probing the full skew polynomial ring -----------------------------------------


def swap_pair():
    P = ring("prod(Z(2),Z(2))")
    alpha = C.endo_swap(P)
    e1, e2, z = P.element([1, 0]).index, P.element([0, 1]).index, P.zero
    sp = lambda *c: SkewPolynomial(P, c, alpha)  # noqa: E731
    return P, alpha, YPolynomial([sp(e1), sp(z, e1)]), YPolynomial([sp(e2), sp(z, e1)])


def test_swap_probe_finds_no_annihilator():
    P, alpha, f, g = swap_pair()
    assert (f * g).is_zero()
    for side in ("right", "left"):
        res = probe_polyring_mccoy(P, alpha, f, g, 4, side)
        assert not res.annihilator_found and str(res) == "NoneUpTo(4)"


def test_identity_probe_over_z4_finds_two():
    Z4 = ring("Z(4)")
    ident = C.endo_identity(Z4)
    sp = lambda *c: SkewPolynomial(Z4, c, ident)  # noqa: E731
    res = probe_polyring_mccoy(Z4, ident, [sp(2)], [sp(2), sp(2)], 2)
    assert res.annihilator_found and res.found.trimmed() == (2,)


def test_probe_recomputes_the_zero_product():
    Z4 = ring("Z(4)")
    ident = C.endo_identity(Z4)
    sp = lambda *c: SkewPolynomial(Z4, c, ident)  # noqa: E731
    y = YPolynomial([sp(), sp(1)])
    with pytest.raises(PreconditionError):
        probe_polyring_mccoy(Z4, ident, y, YPolynomial([sp(1)]), 2)


# --- transfer ------------------------------------------------------------------------


def test_transfer_from_z4_verifies_everywhere():
    rep = transfer_suite(ring("Z(4)"), 2)
    assert rep.passed and rep.base_verdict.outcome == VERIFIED
    names = {entry.name for entry in rep.entries}
    assert {"rn_ring(2)", "product(Z2)", "trunc(2)"} <= names
    assert all(entry.verdict.outcome == VERIFIED and not entry.proved for entry in rep.entries)


def test_transfer_from_t2_refutes_everywhere():
    rep = transfer_suite(ring("T(2,Z(2))"), 1)
    assert rep.passed and rep.base_verdict.refuted
    by_name = {entry.name: entry for entry in rep.entries}
    assert by_name["product(Z2)"].verdict.refuted and by_name["trunc(2)"].verdict.refuted
    assert all(entry.proved for entry in rep.entries)
    assert rep.lines()[0].startswith(rep.base)


# --- invariants over the zoo -------------------------------------------------------------


def zoo_ids(rings):
    return [R.label for R in rings]


ALL = zoo()


@pytest.mark.parametrize("R", ALL, ids=zoo_ids(ALL))
def test_duality_and_soundness(R):
    for D in sorted({1, capped_degree(R.size, 2)}):
        right = check_right_mccoy(R, D)
        mirrored = check_left_mccoy(opposite(R), D)
        assert right.outcome == mirrored.outcome
        for v in (right, mirrored, check_left_mccoy(R, D), check_armendariz(R, D)):
            if v.refuted:
                assert verify_witness(v.witness.f.ring, v.witness).ok


@pytest.mark.parametrize("R", ALL, ids=zoo_ids(ALL))
def test_implications_into_mccoy(R):
    reversible = check_reversible(R).holds
    for D in sorted({1, capped_degree(R.size, 2)}):
        right, left = check_right_mccoy(R, D), check_left_mccoy(R, D)
        if reversible:
            assert not right.refuted and not left.refuted
        if check_armendariz(R, D).holds:
            assert not right.refuted and not left.refuted


@pytest.mark.parametrize("R", ALL, ids=zoo_ids(ALL))
def test_element_property_hierarchy(R):
    reduced, reversible = check_reduced(R).holds, check_reversible(R).holds
    semi = check_semicommutative(R).holds
    if reduced:
        assert reversible
    if reversible:
        assert semi
    if semi and R.is_unital:
        assert check_abelian(R).holds


@pytest.mark.parametrize("expr", ["T(2,Z(2))", "M(2,Z(2))", "Rn(4,Z(2))", "op(T(2,Z(2)))"])
def test_refutation_is_monotone_in_the_degree(expr):
    R = ring(expr)
    prop = Property.ARMENDARIZ if expr.startswith("Rn") else Property.RIGHT_MCCOY
    low = run_check(R, prop, 1)
    assert low.refuted
    for D in (2, 3):
        pad = lambda p: Polynomial(R, p.coeffs + (R.zero,) * (D + 1 - len(p.coeffs)))  # noqa: E731
        w = Witness(prop, pad(low.witness.f), pad(low.witness.g), side=low.witness.side,
                    cross=low.witness.cross)
        assert verify_witness(R, w).ok
    if R.size <= 16:
        assert run_check(R, prop, 2).refuted


def test_witness_is_independent_of_worker_count(monkeypatch):
    monkeypatch.setattr(checker, "PARALLEL_MIN_CANDIDATES", 1)
    for expr in ("T(2,Z(2))", "M(2,Z(2))", "T(2,Z(3))", "Rn(3,Z(2))"):
        R = ring(expr)
        for check in (check_right_mccoy, check_armendariz):
            serial = check(R, 1, threads=1)
            parallel = check(R, 1, threads=3)
            assert str(serial) == str(parallel)
            if serial.refuted:
                assert serial.witness.f == parallel.witness.f
                assert serial.witness.g == parallel.witness.g


SMALL = small_zoo()


@pytest.mark.parametrize("R", SMALL, ids=zoo_ids(SMALL))
def test_pruned_search_matches_brute_force(R):
    v = check_right_mccoy(R, 1)
    naive = naive_right_mccoy(R, 1)
    if naive is None:
        assert v.outcome == VERIFIED
    else:
        assert v.refuted
        assert (v.witness.f.coeffs, v.witness.g.coeffs) == naive
    a = check_armendariz(R, 1)
    naive_a = naive_armendariz(R, 1)
    assert (a.witness.f.coeffs, a.witness.g.coeffs) == naive_a if naive_a else a.holds


def test_brute_force_agreement_at_degree_two_on_tiny_rings():
    for R in [S for S in SMALL if S.size <= 8]:
        v = check_right_mccoy(R, 2)
        naive = naive_right_mccoy(R, 2)
        got = (v.witness.f.coeffs, v.witness.g.coeffs) if v.refuted else None
        assert got == naive, R.label

