"""Dense polynomials and skew polynomials over finite rings.

Coefficient vectors are tuples of element indices, lowest degree first.
The indeterminate commutes with scalars in :class:`Polynomial`; in
:class:`SkewPolynomial` it obeys ``x r = alpha(r) x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .constructions import render_coefficients
from .ring import Element, Endomorphism, FiniteRing, MixedRingError


def _trim(coeffs: Sequence[int], zero: int) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return tuple(coeffs)


def _var_for(ring: FiniteRing) -> str:
    # polynomials over a ring whose elements already print in x use y
    return "y" if ring.meta.get("kind") == "skew_trunc" else "x"


@dataclass(frozen=True, eq=False)
class Polynomial:
    ring: FiniteRing
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.ring.index_of(c) for c in self.coeffs))

    @classmethod
    def from_elements(cls, ring: FiniteRing, coeffs) -> "Polynomial":
        return cls(ring, tuple(ring.index_of(c) for c in coeffs))

    def __eq__(self, other):
        if not isinstance(other, Polynomial) or isinstance(other, SkewPolynomial) != isinstance(self, SkewPolynomial):
            return NotImplemented
        return other.ring is self.ring and self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash((id(self.ring), self.trimmed()))

    def trimmed(self) -> tuple[int, ...]:
        return _trim(self.coeffs, self.ring.zero)

    def degree(self) -> Optional[int]:
        """Top nonzero position, or None for the zero polynomial."""
        t = self.trimmed()
        return len(t) - 1 if t else None

    def is_zero(self) -> bool:
        return not self.trimmed()

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    def _same(self, other: "Polynomial"):
        if other.ring is not self.ring:
            raise MixedRingError(f"polynomials over {self.ring.label} and {other.ring.label}")

    def __add__(self, other):
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        add = self.ring.add
        return self._like([add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        return self._like([self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return apply_scalar_right(self, other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return apply_scalar_left(other, self)
        return NotImplemented

    def _like(self, coeffs):
        return Polynomial(self.ring, tuple(coeffs))

    def render(self, var: Optional[str] = None) -> str:
        return render_coefficients(self.ring, self.trimmed(), var or _var_for(self.ring))

    def __repr__(self):
        return f"Polynomial[{self.ring.label}]({self.render()})"


@dataclass(frozen=True, eq=False)
class SkewPolynomial(Polynomial):
    endo: Endomorphism = None

    def __post_init__(self):
        super().__post_init__()
        if self.endo is None or self.endo.ring is not self.ring:
            raise MixedRingError("skew polynomial needs an endomorphism of its coefficient ring")

    def __eq__(self, other):
        if not isinstance(other, SkewPolynomial):
            return NotImplemented
        return other.endo is self.endo and self.ring is other.ring and self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash((id(self.ring), id(self.endo), self.trimmed()))

    def _same(self, other):
        super()._same(other)
        if not isinstance(other, SkewPolynomial) or other.endo is not self.endo:
            raise MixedRingError("skew polynomials with different endomorphisms")

    def _like(self, coeffs):
        return SkewPolynomial(self.ring, tuple(coeffs), self.endo)

    def __mul__(self, other):
        if isinstance(other, Element):
            return apply_scalar_right(self, other)
        return skew_mul(self, other)

    def render(self, var: Optional[str] = None) -> str:
        return render_coefficients(self.ring, self.trimmed(), var or "x")

    def __repr__(self):
        return f"SkewPolynomial[{self.ring.label}, {self.endo.name}]({self.render()})"


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Convolution c_k = sum_{i+j=k} a_i b_j, left factor's coefficient on the left."""
    f._same(g)
    R = f.ring
    a, b = f.trimmed(), g.trimmed()
    if not a or not b:
        return Polynomial(R, ())
    add, mul, z = R.add, R.mul, R.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == z:
            continue
        for j, bj in enumerate(b):
            out[i + j] = add(out[i + j], mul(ai, bj))
    return Polynomial(R, tuple(out))


def skew_mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    """Exact product in R[x; alpha]: (a x^i)(b x^j) = a alpha^i(b) x^(i+j)."""
    if not isinstance(f, SkewPolynomial) or not isinstance(g, SkewPolynomial):
        raise TypeError("skew_mul takes two skew polynomials")
    f._same(g)
    R, alpha = f.ring, f.endo
    a, b = f.trimmed(), g.trimmed()
    if not a or not b:
        return SkewPolynomial(R, (), alpha)
    add, mul, z = R.add, R.mul, R.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == z:
            continue
        twist = alpha.power(i)
        for j, bj in enumerate(b):
            out[i + j] = add(out[i + j], mul(ai, twist[bj]))
    return SkewPolynomial(R, tuple(out), alpha)


def apply_scalar_right(f: Polynomial, s) -> Polynomial:
    """f(x) s: every coefficient multiplied by s on the right."""
    s = f.ring.index_of(s)
    mul = f.ring.mul
    return f._like([mul(c, s) for c in f.coeffs])


def apply_scalar_left(s, f: Polynomial) -> Polynomial:
    """s f(x) for ordinary polynomials.

    For skew polynomials s sits to the left of each x^i, so this is still
    coefficientwise.
    """
    s = f.ring.index_of(s)
    mul = f.ring.mul
    return f._like([mul(s, c) for c in f.coeffs])


def enumerate_coefficient_vectors(size: int, maxdeg: int, nonzero: bool = True,
                                  zero: int = 0) -> Iterator[tuple[int, ...]]:
    """All vectors in counting order: c_0 varies fastest, c_maxdeg slowest."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be >= 0")
    for top_first in itertools.product(range(size), repeat=maxdeg + 1):
        v = top_first[::-1]
        if nonzero and all(c == zero for c in v):
            continue
        yield v


def enumerate_polys(R: FiniteRing, maxdeg: int, nonzero: bool = True,
                    start: int = 0, step: int = 1) -> Iterator[Polynomial]:
    """Polynomials of degree <= maxdeg in counting order (1, x, 1+x, ... over Z_2).

    ``start``/``step`` select a strided sub-range so workers can split the
    enumeration without coordination.
    """
    vecs = enumerate_coefficient_vectors(R.size, maxdeg, nonzero, R.zero)
    for v in itertools.islice(vecs, start, None, step):
        yield Polynomial(R, v)


def count_polys(R: FiniteRing, maxdeg: int, nonzero: bool = True) -> int:
    return R.size ** (maxdeg + 1) - (1 if nonzero else 0)


def order_key(coeffs: Sequence[int], length: int, zero: int = 0) -> tuple[int, ...]:
    """Sort key matching the enumeration order (top coefficient most significant)."""
    padded = list(coeffs) + [zero] * (length - len(coeffs))
    return tuple(reversed(padded[:length]))


# --- polynomials in y over R[x; alpha] ------------------------------------------------


class YPolynomial:
    """Polynomial in a central indeterminate y with skew-polynomial coefficients."""

    def __init__(self, coeffs: Sequence[SkewPolynomial]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("give at least one coefficient (use the zero skew polynomial)")
        first = coeffs[0]
        for c in coeffs:
            first._same(c)
        self.ring = first.ring
        self.endo = first.endo
        self.coeffs = tuple(coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __mul__(self, other: "YPolynomial") -> "YPolynomial":
        zero = SkewPolynomial(self.ring, (), self.endo)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + skew_mul(a, b)
        return YPolynomial(out)

    def times_right(self, h: SkewPolynomial) -> "YPolynomial":
        return YPolynomial([skew_mul(c, h) for c in self.coeffs])

    def times_left(self, h: SkewPolynomial) -> "YPolynomial":
        return YPolynomial([skew_mul(h, c) for c in self.coeffs])

    def render(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("*y" if k == 1 else f"*y^{k}")
            terms.append(f"[{c.render()}]{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"YPolynomial({self.render()})"
