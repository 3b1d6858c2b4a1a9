"""Finite rings with exact Cayley tables.

Elements of a ring of size ``n`` are the integers ``0..n-1``.  Small rings
materialize full addition and multiplication tables as numpy arrays; rings
above the table threshold use a structural backend that computes products
on demand and refuses exhaustive element-level work.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional

import numpy as np

from .verdicts import Property, Verdict, Witness

DEFAULT_TABLE_THRESHOLD = 4096
ROW_CACHE_LIMIT = 1024


class RingError(ValueError):
    """A construction or import produced something that is not a ring."""


class MixedRingError(ValueError):
    """Elements from different rings were combined."""


class UnsupportedOperation(RuntimeError):
    """The operation needs materialized tables or exceeds a search budget."""


def table_threshold() -> int:
    """Largest carrier that gets materialized tables (env MCCOY_TABLE_THRESHOLD)."""
    raw = os.environ.get("MCCOY_TABLE_THRESHOLD")
    if raw is None:
        return DEFAULT_TABLE_THRESHOLD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MCCOY_TABLE_THRESHOLD must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError("MCCOY_TABLE_THRESHOLD must be positive")
    return value


def _index_dtype(size: int):
    return np.min_scalar_type(max(size - 1, 0))


class FiniteRing:
    """A finite ring, possibly without identity, given by Cayley tables.

    ``codec`` (optional) translates element indices to structured vectors
    and printable strings; ``meta`` records how the ring was built so that
    endomorphism constructors can recognise products, R_n rings and so on.
    """

    is_table = True

    def __init__(
        self,
        add,
        mul,
        zero: int = 0,
        one: Optional[int] = None,
        label: str = "",
        codec=None,
        meta: Optional[dict] = None,
    ):
        add = np.asarray(add)
        mul = np.asarray(mul)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise RingError("addition and multiplication tables must be square and equal-sized")
        size = add.shape[0]
        if size < 1:
            raise RingError("a ring has at least one element")
        for name, t in (("add", add), ("mul", mul)):
            if t.size and (t.min() < 0 or t.max() >= size):
                raise RingError(f"{name} table has entries outside [0, {size})")
        if not 0 <= zero < size:
            raise RingError("zero index out of range")
        if one is not None and not 0 <= one < size:
            raise RingError("identity index out of range")
        dtype = _index_dtype(size)
        self.size = size
        self.add_table = add.astype(dtype)
        self.mul_table = mul.astype(dtype)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self.zero = int(zero)
        self.one = None if one is None else int(one)
        self.label = label or f"ring[{size}]"
        self.codec = codec
        self.meta = dict(meta or {})
        zero_cols = np.argmax(self.add_table == self.zero, axis=1)
        self.neg_table = tuple(int(v) for v in zero_cols)

    def __repr__(self) -> str:
        return f"<FiniteRing {self.label} |R|={self.size}>"

    # --- arithmetic on raw indices ---------------------------------------

    # scalar ops go through Python row lists on small rings (fast lookups) and
    # straight to numpy above ROW_CACHE_LIMIT, where tolist() itself is slow

    def add(self, a: int, b: int) -> int:
        if self.size <= ROW_CACHE_LIMIT:
            return self.add_rows[a][b]
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        if self.size <= ROW_CACHE_LIMIT:
            return self.mul_rows[a][b]
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    @cached_property
    def add_rows(self) -> list[list[int]]:
        return self.add_table.tolist()

    @cached_property
    def mul_rows(self) -> list[list[int]]:
        return self.mul_table.tolist()

    # --- conveniences ------------------------------------------------------

    @property
    def is_unital(self) -> bool:
        return self.one is not None

    def elements(self) -> range:
        return range(self.size)

    def element(self, index) -> "Element":
        if isinstance(index, Element):
            self.check_element(index)
            return index
        if isinstance(index, (list, tuple)):
            if self.codec is None:
                raise ValueError(f"{self.label} has no codec for vector literals")
            index = self.codec.encode(index)
        index = int(index)
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} outside ring of size {self.size}")
        return Element(self, index)

    def check_element(self, e: "Element") -> int:
        if e.ring is not self:
            raise MixedRingError(f"element of {e.ring.label} used in {self.label}")
        return e.index

    def index_of(self, x) -> int:
        """Accept an Element of this ring or a raw index."""
        if isinstance(x, Element):
            return self.check_element(x)
        x = int(x)
        if not 0 <= x < self.size:
            raise ValueError(f"index {x} outside ring of size {self.size}")
        return x

    def vector(self, a: int):
        return self.codec.decode(a) if self.codec is not None else (a,)

    def render(self, a) -> str:
        a = self.index_of(a)
        return self.codec.render(a) if self.codec is not None else str(a)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul_table, self.mul_table.T))

    def tables_equal(self, other: "FiniteRing") -> bool:
        return (
            other.is_table
            and self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.mul_table, other.mul_table)
        )

    def require_tables(self, what: str) -> None:
        pass


class StructuralRing(FiniteRing):
    """A ring too large to tabulate; operations are computed on demand.

    ``annihilator_hook(indices, side)`` and ``triviality_hook(indices, side)``
    may be supplied by constructions that can describe annihilators without
    scanning the carrier (full and upper triangular matrix rings do this
    column by column).
    """

    is_table = False

    def __init__(
        self,
        size: int,
        add_fn: Callable[[int, int], int],
        mul_fn: Callable[[int, int], int],
        neg_fn: Callable[[int], int],
        zero: int = 0,
        one: Optional[int] = None,
        label: str = "",
        codec=None,
        meta: Optional[dict] = None,
        annihilator_hook=None,
        triviality_hook=None,
    ):
        self.size = size
        self._add_fn = add_fn
        self._mul_fn = mul_fn
        self._neg_fn = neg_fn
        self.zero = zero
        self.one = one
        self.label = label or f"ring[{size}]"
        self.codec = codec
        self.meta = dict(meta or {})
        self.annihilator_hook = annihilator_hook
        self.triviality_hook = triviality_hook

    def __repr__(self) -> str:
        return f"<StructuralRing {self.label} |R|={self.size}>"

    def add(self, a, b):
        return self._add_fn(a, b)

    def mul(self, a, b):
        return self._mul_fn(a, b)

    def neg(self, a):
        return self._neg_fn(a)

    def sub(self, a, b):
        return self._add_fn(a, self._neg_fn(b))

    @property
    def add_table(self):
        raise UnsupportedOperation(f"{self.label} has no materialized tables")

    mul_table = add_table
    add_rows = add_table
    mul_rows = add_table

    def is_commutative(self):
        raise UnsupportedOperation(f"{self.label}: commutativity needs tables")

    def tables_equal(self, other):
        return False

    def require_tables(self, what: str) -> None:
        raise UnsupportedOperation(
            f"{what} needs materialized tables; {self.label} has {self.size} elements "
            f"(table threshold {table_threshold()})"
        )


def require_tables(R: FiniteRing, what: str) -> None:
    R.require_tables(what)


class Element:
    """An element of a specific ring; arithmetic across rings is rejected."""

    __slots__ = ("ring", "index")

    def __init__(self, ring: FiniteRing, index: int):
        if not 0 <= index < ring.size:
            raise ValueError(f"index {index} outside ring of size {ring.size}")
        self.ring = ring
        self.index = index

    def _other(self, other) -> int:
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise MixedRingError(
                    f"cannot combine elements of {self.ring.label} and {other.ring.label}"
                )
            return other.index
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Element(self.ring, self.ring.add(self.index, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Element(self.ring, self.ring.sub(self.index, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Element(self.ring, self.ring.mul(self.index, b))

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.index))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring is other.ring and self.index == other.index

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def is_zero(self) -> bool:
        return self.index == self.ring.zero

    def __repr__(self):
        return f"Element({self.ring.render(self.index)})"

    def __str__(self):
        return self.ring.render(self.index)


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law} fails at {self.witness}"


def verify_axioms(R: FiniteRing, samples: int = 2000, seed: int = 0) -> list[Violation]:
    """Return every violated ring law (at most one witness per law).

    Table-backed rings are checked exhaustively; structural rings are
    checked on ``samples`` random triples.
    """
    if not R.is_table:
        return _verify_sampled(R, samples, seed)
    n = R.size
    A = R.add_table.astype(np.int64)
    M = R.mul_table.astype(np.int64)
    z = R.zero
    out: list[Violation] = []
    idx = np.arange(n)

    def first(mask):
        pos = np.argwhere(mask)
        return tuple(int(v) for v in pos[0]) if len(pos) else None

    w = first(A != A.T)
    if w:
        out.append(Violation("additive commutativity", w))
    w = first(A[z] != idx)
    if w:
        out.append(Violation("additive identity", (w[0],)))
    w = first(~np.any(A == z, axis=1))
    if w:
        out.append(Violation("additive inverse", (w[0],)))
    for law, T in (("additive associativity", A), ("multiplicative associativity", M)):
        for a in range(n):
            lhs = T[T[a]]  # (a.b).c indexed [b, c]
            rhs = T[a][T]  # a.(b.c)
            bad = first(lhs != rhs)
            if bad:
                out.append(Violation(law, (a, *bad)))
                break
    for a in range(n):
        row = M[a]
        lhs = row[A]  # a(b+c)
        rhs = A[row[:, None], row[None, :]]
        bad = first(lhs != rhs)
        if bad:
            out.append(Violation("left distributivity", (a, *bad)))
            break
    for a in range(n):
        col = M[:, a]
        lhs = col[A]  # (b+c)a
        rhs = A[col[:, None], col[None, :]]
        bad = first(lhs != rhs)
        if bad:
            out.append(Violation("right distributivity", (a, *bad)))
            break
    if R.one is not None:
        o = R.one
        w = first((M[o] != idx) | (M[:, o] != idx))
        if w:
            out.append(Violation("multiplicative identity", (w[0],)))
    return out


def _verify_sampled(R: FiniteRing, samples: int, seed: int) -> list[Violation]:
    rng = random.Random(seed)
    n = R.size
    found: dict[str, tuple] = {}
    add, mul, neg, z = R.add, R.mul, R.neg, R.zero
    for _ in range(samples):
        a, b, c = (rng.randrange(n) for _ in range(3))
        checks = {
            "additive commutativity": add(a, b) == add(b, a),
            "additive identity": add(z, a) == a,
            "additive inverse": add(a, neg(a)) == z,
            "additive associativity": add(add(a, b), c) == add(a, add(b, c)),
            "multiplicative associativity": mul(mul(a, b), c) == mul(a, mul(b, c)),
            "left distributivity": mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
            "right distributivity": mul(add(b, c), a) == add(mul(b, a), mul(c, a)),
        }
        if R.one is not None:
            checks["multiplicative identity"] = mul(R.one, a) == a == mul(a, R.one)
        for law, ok in checks.items():
            if not ok and law not in found:
                found[law] = (a, b, c)
    return [Violation(law, w) for law, w in found.items()]


# --- annihilators ----------------------------------------------------------


def _indices(R: FiniteRing, S: Iterable) -> list[int]:
    idx = [R.index_of(s) for s in S]
    if not idx:
        raise ValueError("annihilator of an empty set is the whole ring; pass a nonempty set")
    return idx


def _annihilator_indices(R: FiniteRing, idx: list[int], side: str) -> list[int]:
    if not R.is_table:
        hook = getattr(R, "annihilator_hook", None)
        if hook is None:
            R.require_tables("annihilator")
        return hook(idx, side)
    M = R.mul_table
    if side == "right":
        mask = np.all(M[idx, :] == R.zero, axis=0)
    else:
        mask = np.all(M[:, idx] == R.zero, axis=1)
    return [int(v) for v in np.flatnonzero(mask)]


def right_annihilator(R: FiniteRing, S: Iterable) -> frozenset[Element]:
    """{t : a t = 0 for all a in S}."""
    return frozenset(Element(R, t) for t in _annihilator_indices(R, _indices(R, S), "right"))


def left_annihilator(R: FiniteRing, S: Iterable) -> frozenset[Element]:
    """{t : t a = 0 for all a in S}."""
    return frozenset(Element(R, t) for t in _annihilator_indices(R, _indices(R, S), "left"))


def annihilator_is_trivial(R: FiniteRing, S: Iterable, side: str) -> bool:
    idx = _indices(R, S)
    if not R.is_table:
        hook = getattr(R, "triviality_hook", None)
        if hook is not None:
            return hook(idx, side)
    return _annihilator_indices(R, idx, side) == [R.zero]


# --- distinguished elements -----------------------------------------------


def idempotents(R: FiniteRing) -> frozenset[Element]:
    require_tables(R, "idempotents")
    diag = np.diagonal(R.mul_table)
    return frozenset(Element(R, int(e)) for e in np.flatnonzero(diag == np.arange(R.size)))


def regular_elements(R: FiniteRing) -> frozenset[Element]:
    """Elements that are neither left nor right zero divisors."""
    require_tables(R, "regular elements")
    Z = R.mul_table == R.zero
    Z[:, R.zero] = False
    Z[R.zero, :] = False
    bad = Z.any(axis=1) | Z.any(axis=0)
    bad[R.zero] = True
    return frozenset(Element(R, int(a)) for a in np.flatnonzero(~bad))


def is_regular(R: FiniteRing, a) -> bool:
    a = R.index_of(a)
    if a == R.zero:
        return False
    require_tables(R, "is_regular")
    row = R.mul_table[a]
    col = R.mul_table[:, a]
    hits = (row == R.zero) | (col == R.zero)
    hits[R.zero] = False
    return not bool(hits.any())


def units(R: FiniteRing) -> frozenset[Element]:
    if R.one is None:
        raise ValueError(f"{R.label} has no identity, so units are undefined")
    require_tables(R, "units")
    E = R.mul_table == R.one
    two_sided = E & E.T  # a b = 1 and b a = 1
    return frozenset(Element(R, int(a)) for a in np.flatnonzero(two_sided.any(axis=1)))


# --- endomorphisms ---------------------------------------------------------


class EndomorphismError(RingError):
    pass


class Endomorphism:
    """A validated ring endomorphism given by its table on indices."""

    def __init__(self, ring: FiniteRing, table: Iterable[int], name: str = "endo"):
        require_tables(ring, "endomorphism validation")
        table = tuple(int(v) for v in table)
        if len(table) != ring.size or any(not 0 <= v < ring.size for v in table):
            raise EndomorphismError(f"{name}: map must send {ring.size} elements into the carrier")
        t = np.asarray(table)
        A, M = ring.add_table, ring.mul_table
        bad = np.argwhere(t[A] != A[t[:, None], t[None, :]])
        if len(bad):
            a, b = (int(v) for v in bad[0])
            raise EndomorphismError(f"{name}: not additive at ({ring.render(a)}, {ring.render(b)})")
        bad = np.argwhere(t[M] != M[t[:, None], t[None, :]])
        if len(bad):
            a, b = (int(v) for v in bad[0])
            raise EndomorphismError(
                f"{name}: not multiplicative at ({ring.render(a)}, {ring.render(b)})"
            )
        if ring.one is not None and table[ring.one] != ring.one:
            raise EndomorphismError(f"{name}: does not fix the identity")
        self.ring = ring
        self.table = table
        self.name = name
        self._powers = {0: tuple(range(ring.size)), 1: table}

    def __call__(self, a):
        if isinstance(a, Element):
            return Element(self.ring, self.table[self.ring.check_element(a)])
        return self.table[a]

    def __repr__(self):
        return f"<Endomorphism {self.name} on {self.ring.label}>"

    def power(self, k: int) -> tuple[int, ...]:
        """Table of the k-fold composite (k >= 0), cached."""
        if k < 0:
            raise ValueError("negative power")
        if k not in self._powers:
            prev = self.power(k - 1)
            self._powers[k] = tuple(self.table[v] for v in prev)
        return self._powers[k]

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.ring.size

    is_surjective = is_injective  # finite carrier

    def is_automorphism(self) -> bool:
        return self.is_injective()

    def is_idempotent(self) -> bool:
        return self.power(2) == self.table

    def is_identity(self) -> bool:
        return self.table == tuple(range(self.ring.size))


def is_rigid(R: FiniteRing, alpha: Endomorphism) -> Verdict:
    """Holds iff a * alpha(a) = 0 forces a = 0."""
    if alpha.ring is not R:
        raise MixedRingError("endomorphism belongs to a different ring")
    require_tables(R, "rigidity")
    mul = R.mul_rows
    for a in R.elements():
        if a != R.zero and mul[a][alpha.table[a]] == R.zero:
            w = Witness(Property.RIGID, elements=(a,), note="a*alpha(a) = 0", rendered=(R.render(a),))
            return Verdict(Property.RIGID, None, "fails", w)
    return Verdict(Property.RIGID, None, "holds")


# --- ideals ----------------------------------------------------------------


def _additive_closure(R: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    add = R.add_rows
    seen = {R.zero}
    frontier = [R.zero]
    gens = sorted(set(gens))
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _subgroup_sum(R: FiniteRing, I: frozenset[int], J: frozenset[int]) -> frozenset[int]:
    A = R.add_table
    return frozenset(int(v) for v in np.unique(A[np.ix_(sorted(I), sorted(J))]))


@dataclass(frozen=True)
class Ideal:
    """A two-sided ideal; validated on construction."""

    ring: FiniteRing
    members: frozenset[int]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(m) for m in self.members))
        if self.validate:
            problem = ideal_violation(self.ring, self.members)
            if problem:
                raise RingError(f"not an ideal of {self.ring.label}: {problem}")

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return (x.index if isinstance(x, Element) else x) in self.members

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def render(self) -> str:
        return "{" + ", ".join(self.ring.render(m) for m in self.sorted_members()) + "}"


def ideal_violation(R: FiniteRing, members: frozenset[int]) -> Optional[str]:
    require_tables(R, "ideal validation")
    if R.zero not in members:
        return "does not contain zero"
    idx = sorted(members)
    A, M = R.add_table, R.mul_table
    mask = np.zeros(R.size, dtype=bool)
    mask[idx] = True
    if not mask[A[np.ix_(idx, idx)]].all():
        return "not closed under addition"
    if not mask[[R.neg_table[i] for i in idx]].all():
        return "not closed under negation"
    if not mask[M[:, idx]].all():
        return "not closed under left multiplication"
    if not mask[M[idx, :]].all():
        return "not closed under right multiplication"
    return None


def principal_ideal(R: FiniteRing, a: int) -> frozenset[int]:
    """Smallest two-sided ideal containing a (no identity assumed)."""
    a = R.index_of(a)
    M = R.mul_table
    left = M[:, a]
    right = M[a, :]
    both = M[left][:, :]  # (r a) s indexed [r, s]
    gens = {a, *left.tolist(), *right.tolist(), *both.ravel().tolist()}
    return _additive_closure(R, gens)


def ideals(R: FiniteRing, limit: Optional[int] = None) -> list[Ideal]:
    """All two-sided ideals, ordered by (size, sorted members).

    Built as sums of principal ideals, so the cost depends on the number of
    ideals rather than on the number of subsets.
    """
    limit = table_threshold() if limit is None else limit
    if not R.is_table or R.size > limit:
        raise UnsupportedOperation(
            f"ideal enumeration refused for {R.label} ({R.size} elements, limit {limit})"
        )
    principals = sorted({principal_ideal(R, a) for a in R.elements()}, key=_ideal_key)
    found = {frozenset([R.zero])}
    frontier = list(found)
    while frontier:
        nxt = []
        for I in frontier:
            for P in principals:
                if P <= I:
                    continue
                J = _subgroup_sum(R, I, P)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return [Ideal(R, m, validate=False) for m in sorted(found, key=_ideal_key)]


def _ideal_key(members):
    return (len(members), sorted(members))


# --- opposite ring and isomorphisms -----------------------------------------


def opposite(R: FiniteRing) -> FiniteRing:
    """Same carrier and addition, multiplication reversed."""
    require_tables(R, "opposite ring")
    label = R.label[3:-1] if R.label.startswith("op(") and R.label.endswith(")") else f"op({R.label})"
    meta = {"kind": "opposite", "of": R}
    return FiniteRing(R.add_table, R.mul_table.T, R.zero, R.one, label, R.codec, meta)


def _profiles(R: FiniteRing) -> list[tuple]:
    """Isomorphism-invariant fingerprint of each element."""
    add, mul, z = R.add_rows, R.mul_rows, R.zero
    M = R.mul_table
    rann = (M == z).sum(axis=1)  # |{t : a t = 0}|
    lann = (M == z).sum(axis=0)  # |{t : t a = 0}|
    prof = []
    for a in R.elements():
        order, x = 1, a
        while x != z:
            x = add[x][a]
            order += 1
        nil, x = 1, a
        while x != z and nil <= R.size:
            x = mul[x][a]
            nil += 1
        nil = nil if x == z else 0
        sq = mul[a][a]
        prof.append((order, sq == a, nil, int(rann[a]), int(lann[a]), sq == z))
    return prof


def find_isomorphism(R: FiniteRing, S: FiniteRing, max_size: int = 1024) -> Optional[tuple[int, ...]]:
    """Return a table phi with phi[a] in S for a in R preserving + and *, or None.

    Backtracks over images of an additive generating set, pruning on
    element fingerprints (additive order, idempotency, nilpotency index,
    annihilator sizes) and on multiplicativity inside the partial domain.
    """
    if R.size != S.size:
        return None
    if not (R.is_table and S.is_table):
        raise UnsupportedOperation("isomorphism search needs materialized tables")
    if R.size > max_size:
        raise UnsupportedOperation(f"isomorphism search budget is {max_size} elements, got {R.size}")
    if (R.one is None) != (S.one is None):
        return None
    pR, pS = _profiles(R), _profiles(S)
    if sorted(pR) != sorted(pS):
        return None
    by_profile: dict[tuple, list[int]] = {}
    for b, p in enumerate(pS):
        by_profile.setdefault(p, []).append(b)

    addR, mulR, addS, mulS = R.add_rows, R.mul_rows, S.add_rows, S.mul_rows

    # greedy additive generators, largest additive order first
    order_of = [p[0] for p in pR]
    gens: list[int] = []
    span = {R.zero}
    for a in sorted(R.elements(), key=lambda a: (-order_of[a], a)):
        if a not in span:
            gens.append(a)
            span = set(_additive_closure(R, [*gens]))
    phi0 = {R.zero: S.zero}

    def extend(phi: dict, g: int, h: int) -> Optional[dict]:
        new = dict(phi)
        used = set(phi.values())
        base = list(phi.items())
        mg, mh = g, h
        while mg not in phi:
            for x, y in base:
                u, v = addR[x][mg], addS[y][mh]
                if u in new:
                    if new[u] != v:
                        return None
                else:
                    if v in used or pR[u] != pS[v]:
                        return None
                    new[u] = v
                    used.add(v)
            mg, mh = addR[mg][g], addS[mh][h]
        if mh != new[mg]:
            return None
        for x, y in new.items():
            for u, v in new.items():
                p = mulR[x][u]
                if p in new and new[p] != mulS[y][v]:
                    return None
        return new

    def search(phi: dict, k: int) -> Optional[dict]:
        if k == len(gens):
            return phi
        g = gens[k]
        for h in by_profile[pR[g]]:
            if h in phi.values():
                continue
            nxt = extend(phi, g, h)
            if nxt is not None:
                done = search(nxt, k + 1)
                if done is not None:
                    return done
        return None

    phi = search(phi0, 0)
    if phi is None or len(phi) != R.size:
        return None
    table = tuple(phi[a] for a in R.elements())
    if not is_isomorphism(R, S, table):
        return None
    return table


def is_isomorphism(R: FiniteRing, S: FiniteRing, table) -> bool:
    t = np.asarray(table)
    if len(t) != R.size or len(set(t.tolist())) != S.size:
        return False
    A, M = R.add_table, R.mul_table
    ok_add = np.array_equal(t[A], S.add_table[t[:, None], t[None, :]])
    ok_mul = np.array_equal(t[M], S.mul_table[t[:, None], t[None, :]])
    return bool(ok_add and ok_mul)


# --- JSON import/export -----------------------------------------------------


def ring_to_json(R: FiniteRing) -> dict:
    require_tables(R, "export")
    return {
        "size": R.size,
        "zero": R.zero,
        "one": R.one,
        "add": R.add_table.tolist(),
        "mul": R.mul_table.tolist(),
        "label": R.label,
    }


def dumps_ring(R: FiniteRing) -> str:
    return json.dumps(ring_to_json(R), separators=(",", ":"))


def ring_from_json(doc) -> FiniteRing:
    """Build a ring from a parsed JSON document, re-validating every law."""
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    try:
        size = int(doc["size"])
        add, mul = doc["add"], doc["mul"]
        zero = int(doc["zero"])
        one = doc.get("one")
        label = str(doc.get("label", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise RingError(f"malformed ring document: {exc}") from exc
    try:
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise RingError(f"malformed ring tables: {exc}") from exc
    if add.shape != (size, size) or mul.shape != (size, size):
        raise RingError(f"tables must be {size}x{size}")
    R = FiniteRing(add, mul, zero, None if one is None else int(one), label)
    report = verify_axioms(R)
    if report:
        raise RingError("imported tables violate ring laws: " + "; ".join(map(str, report)))
    R.meta["kind"] = "imported"
    return R


def load_ring(path) -> FiniteRing:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RingError(f"{path}: invalid JSON ({exc})") from exc
    return ring_from_json(doc)
