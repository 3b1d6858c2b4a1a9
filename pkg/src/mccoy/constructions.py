"""Constructors for every ring and endomorphism used by the suite.

Matrix-shaped rings (M_n, T_n, R_n, V) are described by a *pattern*: an
n x n grid whose cells name a free variable or hold zero.  Elements are
indexed by their variable vectors in lexicographic order (variable 0 most
significant), so witnesses print the same way on every run.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .ring import (
    Element,
    Endomorphism,
    EndomorphismError,
    FiniteRing,
    Ideal,
    RingError,
    StructuralRing,
    UnsupportedOperation,
    ideal_violation,
    table_threshold,
)

_CHUNK = 1 << 22  # pair-block size for vectorized table builds


# --- codecs ------------------------------------------------------------------


class ScalarCodec:
    def __init__(self, n: int):
        self.n = n

    def decode(self, i):
        return (i,)

    def encode(self, v):
        v = _flatten(v)
        if len(v) != 1 or not 0 <= v[0] < self.n:
            raise ValueError(f"expected a single residue mod {self.n}, got {v}")
        return v[0]

    def render(self, i):
        return str(i)


class ProductCodec:
    def __init__(self, left: FiniteRing, right: FiniteRing):
        self.left, self.right = left, right

    def decode(self, i):
        b, a = divmod(i, self.left.size)
        return a, b

    def encode(self, v):
        v = list(v)
        if len(v) != 2:
            raise ValueError("product literal needs two components")
        a, b = (_component_index(r, x) for r, x in zip((self.left, self.right), v))
        return a + b * self.left.size

    def render(self, i):
        a, b = self.decode(i)
        return f"({self.left.render(a)},{self.right.render(b)})"


def _component_index(R: FiniteRing, x) -> int:
    if isinstance(x, (list, tuple)):
        return R.codec.encode(x) if R.codec else int(_flatten(x)[0])
    x = int(x)
    if not 0 <= x < R.size:
        raise ValueError(f"{x} outside {R.label}")
    return x


def _flatten(v):
    if isinstance(v, (list, tuple)):
        out = []
        for x in v:
            out.extend(_flatten(x))
        return out
    return [int(v)]


class MixedRadix:
    """Vectors over range(q)^k <-> integers, first digit most significant."""

    def __init__(self, q: int, k: int, little_endian: bool = False):
        self.q, self.k, self.little = q, k, little_endian
        w = [q ** (k - 1 - j) for j in range(k)]
        self.weights = w[::-1] if little_endian else w

    def decode(self, i: int) -> tuple[int, ...]:
        return tuple((i // w) % self.q for w in self.weights)

    def encode(self, v) -> int:
        return sum(int(x) * w for x, w in zip(v, self.weights))

    def all_vectors(self) -> np.ndarray:
        idx = np.arange(self.q**self.k, dtype=np.int64)
        return np.stack([(idx // w) % self.q for w in self.weights], axis=1)


class PatternCodec:
    """Matrix rings described by a variable pattern over a base ring."""

    def __init__(self, base: FiniteRing, pattern: Sequence[Sequence[Optional[int]]]):
        self.base = base
        self.pattern = tuple(tuple(row) for row in pattern)
        self.n = len(pattern)
        self.nvars = 1 + max(v for row in pattern for v in row if v is not None)
        self.radix = MixedRadix(base.size, self.nvars)
        self.anchor = {}
        for i, row in enumerate(self.pattern):
            for j, v in enumerate(row):
                if v is not None and v not in self.anchor:
                    self.anchor[v] = (i, j)

    def decode(self, i):
        return self.radix.decode(i)

    def matrix(self, i) -> list[list[int]]:
        v = self.decode(i)
        z = self.base.zero
        return [[z if c is None else v[c] for c in row] for row in self.pattern]

    def encode(self, v):
        v = list(v)
        if v and isinstance(v[0], (list, tuple)):
            return self.encode_matrix(v)
        if len(v) != self.nvars:
            raise ValueError(f"expected {self.nvars} free entries, got {len(v)}")
        return self.radix.encode(_component_index(self.base, x) for x in v)

    def encode_matrix(self, mat) -> int:
        if len(mat) != self.n or any(len(r) != self.n for r in mat):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        m = [[_component_index(self.base, x) for x in row] for row in mat]
        vals: dict[int, int] = {}
        for i, row in enumerate(self.pattern):
            for j, c in enumerate(row):
                if c is None:
                    if m[i][j] != self.base.zero:
                        raise ValueError(f"entry ({i + 1},{j + 1}) must be zero in this ring")
                elif vals.setdefault(c, m[i][j]) != m[i][j]:
                    raise ValueError(f"matrix does not fit the ring's pattern at ({i + 1},{j + 1})")
        return self.radix.encode(vals[c] for c in range(self.nvars))

    def render(self, i):
        rows = self.matrix(i)
        return "[" + ",".join("[" + ",".join(self.base.render(x) for x in r) + "]" for r in rows) + "]"


class PolyCodec:
    """Coefficient vectors (c_0, ..., c_{n-1}); c_0 is the least significant digit."""

    def __init__(self, base: FiniteRing, n: int, var: str = "x"):
        self.base, self.n, self.var = base, n, var
        self.radix = MixedRadix(base.size, n, little_endian=True)

    def decode(self, i):
        return self.radix.decode(i)

    def encode(self, v):
        v = list(v)
        if len(v) != self.n:
            raise ValueError(f"expected {self.n} coefficients")
        return self.radix.encode(_component_index(self.base, x) for x in v)

    def render(self, i):
        return render_coefficients(self.base, self.decode(i), self.var)


def render_coefficients(base: FiniteRing, coeffs, var: str) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == base.zero:
            continue
        mono = "" if k == 0 else (f"*{var}" if k == 1 else f"*{var}^{k}")
        terms.append(f"({base.render(c)}){mono}")
    return " + ".join(terms) if terms else "0"


class SubsetCodec:
    """Rings carved out of a parent ring; element k is parent element members[k]."""

    def __init__(self, parent: FiniteRing, members: Sequence[int]):
        self.parent = parent
        self.members = tuple(members)
        self.position = {m: k for k, m in enumerate(self.members)}

    def decode(self, i):
        return self.parent.vector(self.members[i])

    def encode(self, v):
        p = self.parent.codec.encode(v) if self.parent.codec else int(_flatten(v)[0])
        if p not in self.position:
            raise ValueError("literal is not an element of this subring")
        return self.position[p]

    def render(self, i):
        return self.parent.render(self.members[i])


class CosetCodec(SubsetCodec):
    """Quotient rings: element k is the coset of parent element reps[k]."""

    def __init__(self, parent, reps, projection):
        super().__init__(parent, reps)
        self.projection = projection

    def encode(self, v):
        p = self.parent.codec.encode(v) if self.parent.codec else int(_flatten(v)[0])
        return self.projection[p]

    def render(self, i):
        return "[" + self.parent.render(self.members[i]) + "]"


# --- helpers -------------------------------------------------------------------


def _fits(size: int) -> bool:
    return size <= table_threshold()


def _encode_rows(vecs: np.ndarray, weights) -> np.ndarray:
    out = np.zeros(vecs.shape[:-1], dtype=np.int64)
    for j, w in enumerate(weights):
        out += vecs[..., j] * w
    return out


def _pair_blocks(N: int):
    step = max(1, _CHUNK // max(N, 1))
    for start in range(0, N, step):
        yield start, min(N, start + step)


# --- basic rings -----------------------------------------------------------------


def zmod(n: int) -> FiniteRing:
    """The integers modulo n."""
    if int(n) != n or n < 2:
        raise ValueError(f"Z(n) needs an integer n >= 2, got {n}")
    n = int(n)
    r = np.arange(n)
    add = np.add.outer(r, r) % n
    mul = np.multiply.outer(r, r) % n
    return FiniteRing(add, mul, 0, 1, f"Z({n})", ScalarCodec(n), {"kind": "zmod", "n": n})


def product(R1: FiniteRing, R2: FiniteRing) -> FiniteRing:
    """Direct product with componentwise operations.

    Element (a, b) has index a + |R1| b, so the first component varies
    fastest, as coefficient vectors do.
    """
    q1, q2 = R1.size, R2.size
    N = q1 * q2
    one = None
    if R1.one is not None and R2.one is not None:
        one = R1.one + q1 * R2.one
    label = f"prod({_strip_prod(R1)},{R2.label})"
    meta = {"kind": "product", "factors": (R1, R2)}
    codec = ProductCodec(R1, R2)
    zero = R1.zero + q1 * R2.zero
    if not _fits(N) or not (R1.is_table and R2.is_table):
        def op(f1, f2):
            def fn(a, b):
                a2, a1 = divmod(a, q1)
                b2, b1 = divmod(b, q1)
                return f1(a1, b1) + q1 * f2(a2, b2)
            return fn

        def neg(a):
            a2, a1 = divmod(a, q1)
            return R1.neg(a1) + q1 * R2.neg(a2)

        return StructuralRing(N, op(R1.add, R2.add), op(R1.mul, R2.mul), neg, zero, one,
                              label, codec, meta)

    def combine(T1, T2):
        T1 = T1.astype(np.int64)
        T2 = T2.astype(np.int64)
        # axes (b_x, a_x, b_y, a_y) flatten to x = a_x + q1 b_x
        big = T2[:, None, :, None] * q1 + T1[None, :, None, :]
        return big.reshape(N, N)

    return FiniteRing(combine(R1.add_table, R2.add_table), combine(R1.mul_table, R2.mul_table),
                      zero, one, label, codec, meta)


def _strip_prod(R: FiniteRing) -> str:
    # prod is n-ary in the expression language; keep left-nested products flat
    if R.meta.get("kind") == "product" and R.label.startswith("prod("):
        return R.label[5:-1]
    return R.label


def product_of(rings: Sequence[FiniteRing]) -> FiniteRing:
    if len(rings) < 2:
        raise ValueError("prod needs at least two factors")
    out = rings[0]
    for R in rings[1:]:
        out = product(out, R)
    return out


# --- pattern (matrix-shaped) rings -------------------------------------------------


def pattern_ring(base: FiniteRing, pattern, label: str, meta: dict) -> FiniteRing:
    """Subring of M_n(base) consisting of matrices that follow ``pattern``."""
    if base.one is None and meta.get("kind") in ("matrix", "triangular"):
        raise RingError(f"{label}: matrix rings need a base ring with identity")
    codec = PatternCodec(base, pattern)
    n, k, q = codec.n, codec.nvars, base.size
    N = q**k
    meta = {**meta, "base": base, "pattern": codec.pattern}
    zero = codec.radix.encode([base.zero] * k)
    one = None
    if base.one is not None:
        try:
            one = codec.encode_matrix(
                [[base.one if i == j else base.zero for j in range(n)] for i in range(n)]
            )
        except ValueError:
            one = None
    if not _fits(N) or not base.is_table:
        return _structural_pattern_ring(base, codec, zero, one, label, meta)

    V = codec.radix.all_vectors()  # (N, k)
    A = base.add_table.astype(np.intp)
    Mb = base.mul_table.astype(np.intp)
    w = codec.radix.weights
    dt = np.int32 if N < (1 << 31) else np.int64

    def spread(S, rk, ck, out=None):
        # out[x, y] (+)= S[rk[x], ck[y]] in row blocks
        out = np.zeros((N, N), dtype=dt) if out is None else out
        for lo, hi in _pair_blocks(N):
            out[lo:hi] += np.take(S[rk[lo:hi]], ck, axis=1)
        return out

    def key(cols):
        # mixed-radix key of the digits at ``cols`` for every element
        kk = np.zeros(N, dtype=np.intp)
        for c in cols:
            kk = kk * q + V[:, c]
        return kk

    def digits(m):
        return np.stack([(np.arange(q**m) // q**(m - 1 - t)) % q for t in range(m)], axis=1) \
            if m else np.zeros((1, 0), dtype=np.intp)

    def entry_table(i, j):
        """Value of (XY)_ij as a table over (row-i digits of X, column-j digits of Y)."""
        terms = [(codec.pattern[i][l], codec.pattern[l][j]) for l in range(n)
                 if codec.pattern[i][l] is not None and codec.pattern[l][j] is not None]
        rv = sorted({a for a, _ in terms})
        cv = sorted({b for _, b in terms})
        DX, DY = digits(len(rv)), digits(len(cv))
        acc = np.full((len(DX), len(DY)), base.zero, dtype=np.intp)
        for a, b in terms:
            acc = A[acc, Mb[DX[:, rv.index(a)][:, None], DY[:, cv.index(b)][None, :]]]
        return acc, rv, cv

    add = np.zeros((N, N), dtype=dt)
    for c in range(k):
        spread(A * w[c], V[:, c], V[:, c], add)

    mul = np.zeros((N, N), dtype=dt)
    tied = []
    for i in range(n):
        for j in range(n):
            v = codec.pattern[i][j]
            S, rv, cv = entry_table(i, j)
            if v is None:
                if np.any(S != base.zero):
                    raise RingError(f"{label}: pattern is not closed under multiplication")
            elif codec.anchor[v] == (i, j):
                spread(S * w[v], key(rv), key(cv), mul)
            else:
                tied.append((v, S, rv, cv))
    if tied and N * N <= (1 << 20):
        for v, S, rv, cv in tied:
            ai, aj = codec.anchor[v]
            S0, rv0, cv0 = entry_table(ai, aj)
            if np.any(spread(S, key(rv), key(cv)) != spread(S0, key(rv0), key(cv0))):
                raise RingError(f"{label}: pattern is not closed under multiplication")
    return FiniteRing(add, mul, zero, one, label, codec, meta)


def _structural_pattern_ring(base, codec, zero, one, label, meta):
    n = codec.n
    zb = base.zero

    def add(a, b):
        va, vb = codec.decode(a), codec.decode(b)
        return codec.radix.encode(base.add(x, y) for x, y in zip(va, vb))

    def neg(a):
        return codec.radix.encode(base.neg(x) for x in codec.decode(a))

    def mul(a, b):
        X, Y = codec.matrix(a), codec.matrix(b)
        vals = []
        for v in range(codec.nvars):
            i, j = codec.anchor[v]
            acc = zb
            for l in range(n):
                acc = base.add(acc, base.mul(X[i][l], Y[l][j]))
            vals.append(acc)
        return codec.radix.encode(vals)

    hook = triv = None
    if _independent_cells(codec):
        hook, triv = _matrix_annihilator_hooks(base, codec)
    return StructuralRing(codec.radix.q**codec.nvars, add, mul, neg, zero, one, label, codec,
                          meta, annihilator_hook=hook, triviality_hook=triv)


def _independent_cells(codec: PatternCodec) -> bool:
    seen = [v for row in codec.pattern for v in row if v is not None]
    return len(seen) == len(set(seen))


def _matrix_annihilator_hooks(base: FiniteRing, codec: PatternCodec):
    """Annihilators in M_n / T_n without scanning the carrier.

    P is a right annihilator of {A_i} iff every column of P (restricted to
    the cells the pattern leaves free) is killed by every A_i; columns are
    independent, so the annihilator is a product of column kernels.
    """
    import itertools

    n, zb = codec.n, base.zero

    def line_kernels(mats, side):
        kernels = []
        for c in range(n):
            if side == "right":  # column c of P, free rows
                free = [r for r in range(n) if codec.pattern[r][c] is not None]
            else:  # row c of Q, free columns
                free = [r for r in range(n) if codec.pattern[c][r] is not None]
            ker = []
            for vals in itertools.product(range(base.size), repeat=len(free)):
                vec = [zb] * n
                for r, x in zip(free, vals):
                    vec[r] = x
                ok = True
                for m in mats:
                    for t in range(n):
                        acc = zb
                        for s in range(n):
                            if side == "right":
                                acc = base.add(acc, base.mul(m[t][s], vec[s]))
                            else:
                                acc = base.add(acc, base.mul(vec[s], m[s][t]))
                        if acc != zb:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    ker.append(vec)
            kernels.append(ker)
        return kernels

    def triviality(idx, side):
        mats = [codec.matrix(a) for a in idx]
        return all(len(k) == 1 for k in line_kernels(mats, side))

    def annihilator(idx, side):
        mats = [codec.matrix(a) for a in idx]
        kernels = line_kernels(mats, side)
        total = 1
        for k in kernels:
            total *= len(k)
        if total > table_threshold():
            raise UnsupportedOperation(f"annihilator has {total} elements; too many to list")
        out = []
        for choice in itertools.product(*kernels):
            if side == "right":
                mat = [[choice[c][r] for c in range(n)] for r in range(n)]
            else:
                mat = [list(choice[r]) for r in range(n)]
            out.append(codec.encode_matrix(mat))
        return sorted(out)

    return annihilator, triviality


def matrix_ring(n: int, R: FiniteRing) -> FiniteRing:
    """M_n(R)."""
    _check_dim(n)
    pattern = [[i * n + j for j in range(n)] for i in range(n)]
    return pattern_ring(R, pattern, f"M({n},{R.label})", {"kind": "matrix", "n": n})


def upper_triangular(n: int, R: FiniteRing) -> FiniteRing:
    """T_n(R); free entries numbered row-major."""
    _check_dim(n)
    pattern, k = [], 0
    for i in range(n):
        row = []
        for j in range(n):
            if j >= i:
                row.append(k)
                k += 1
            else:
                row.append(None)
        pattern.append(row)
    return pattern_ring(R, pattern, f"T({n},{R.label})", {"kind": "triangular", "n": n})


def rn_ring(n: int, R: FiniteRing) -> FiniteRing:
    """Upper triangular n x n matrices with one repeated diagonal entry.

    Variable 0 is the diagonal value; the strictly upper entries follow
    row-major.
    """
    _check_dim(n)
    pattern, k = [], 1
    for i in range(n):
        row = []
        for j in range(n):
            if j == i:
                row.append(0)
            elif j > i:
                row.append(k)
                k += 1
            else:
                row.append(None)
        pattern.append(row)
    return pattern_ring(R, pattern, f"Rn({n},{R.label})", {"kind": "rn", "n": n})


def v_ring(R: FiniteRing) -> FiniteRing:
    """6 x 6 ring with diagonal (a,b,c,a,b,c) and d, e, f at (1,2), (3,4), (5,6).

    The codec vector is (a, b, c, d, e, f).
    """
    a, b, c, d, e, f = range(6)
    Z = None
    pattern = [
        [a, d, Z, Z, Z, Z],
        [Z, b, Z, Z, Z, Z],
        [Z, Z, c, e, Z, Z],
        [Z, Z, Z, a, Z, Z],
        [Z, Z, Z, Z, b, f],
        [Z, Z, Z, Z, Z, c],
    ]
    return pattern_ring(R, pattern, f"V({R.label})", {"kind": "v"})


def _check_dim(n):
    if int(n) != n or n < 1:
        raise ValueError(f"matrix size must be an integer >= 1, got {n}")


# --- subrings, quotients ------------------------------------------------------------


def _subring(R: FiniteRing, members: Sequence[int], one: Optional[int], label: str,
             meta: dict, codec=None) -> FiniteRing:
    members = list(members)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    sub = np.ix_(members, members)
    add = pos[R.add_table[sub]]
    mul = pos[R.mul_table[sub]]
    if (add < 0).any() or (mul < 0).any():
        raise RingError(f"{label}: subset is not closed under the ring operations")
    zero = int(pos[R.zero])
    one_idx = None if one is None else int(pos[one])
    codec = codec or SubsetCodec(R, members)
    return FiniteRing(add, mul, zero, one_idx, label, codec, {**meta, "parent": R,
                                                              "members": tuple(members)})


def corner(R: FiniteRing, e, label: Optional[str] = None) -> FiniteRing:
    """e R e with identity e."""
    R.require_tables("corner ring")
    e = R.index_of(e)
    M = R.mul_table
    if M[e, e] != e:
        raise RingError(f"{R.render(e)} is not idempotent in {R.label}")
    members = sorted({int(v) for v in M[M[e, :], e]})
    label = label or f"corner({R.label},{R.render(e)})"
    return _subring(R, members, e, label, {"kind": "corner", "idempotent": e})


def ideal_as_ring(I: Ideal, label: Optional[str] = None) -> FiniteRing:
    """The ideal's members as a ring without identity."""
    R = I.ring
    label = label or f"ideal({R.label},{len(I)})"
    return _subring(R, I.sorted_members(), None, label, {"kind": "ideal"})


def quotient(R: FiniteRing, I: Ideal, label: Optional[str] = None) -> FiniteRing:
    """R/I with the least index of each coset as its representative.

    The projection R -> R/I is available as ``Q.meta['projection']`` (a
    tuple indexed by parent element).
    """
    problem = ideal_violation(R, I.members) if I.ring is R else "ideal of another ring"
    if problem:
        raise RingError(f"quotient by a non-ideal: {problem}")
    A = R.add_table
    members = I.sorted_members()
    coset_of = np.full(R.size, -1, dtype=np.int64)
    reps = []
    for a in R.elements():
        if coset_of[a] >= 0:
            continue
        coset_of[A[a, members]] = len(reps)
        reps.append(a)
    projection = tuple(int(v) for v in coset_of)
    reps_arr = np.asarray(reps)
    sub = np.ix_(reps_arr, reps_arr)
    add = coset_of[A[sub]]
    mul = coset_of[R.mul_table[sub]]
    one = None if R.one is None else projection[R.one]
    label = label or f"quot({R.label},{len(I)})"
    meta = {"kind": "quotient", "parent": R, "projection": projection, "ideal": I}
    return FiniteRing(add, mul, projection[R.zero], one, label,
                      CosetCodec(R, reps, projection), meta)


# --- truncated skew polynomial rings ----------------------------------------------


def skew_trunc(R: FiniteRing, alpha: Endomorphism, n: int, label: Optional[str] = None) -> FiniteRing:
    """R[x; alpha]/(x^n): coefficient vectors with (a x^i)(b x^j) = a alpha^i(b) x^(i+j)."""
    if int(n) != n or n < 2:
        raise ValueError("truncation degree must be an integer >= 2")
    if alpha.ring is not R:
        raise EndomorphismError("endomorphism belongs to a different ring")
    n = int(n)
    q = R.size
    N = q**n
    codec = PolyCodec(R, n)
    if label is None:
        label = f"trunc({R.label},{n})" if alpha.is_identity() else \
            f"skewquot({R.label},{alpha.name},{n})"
    meta = {"kind": "skew_trunc", "base": R, "endo": alpha, "n": n}
    zero = codec.radix.encode([R.zero] * n)
    one = None if R.one is None else codec.radix.encode([R.one] + [R.zero] * (n - 1))
    if not _fits(N):
        raise UnsupportedOperation(
            f"{label} has {N} elements, above the table threshold {table_threshold()}"
        )
    V = codec.radix.all_vectors()
    A = R.add_table.astype(np.int64)
    Mb = R.mul_table.astype(np.int64)
    powers = [np.asarray(alpha.power(i), dtype=np.int64) for i in range(n)]
    w = codec.radix.weights
    add = np.empty((N, N), dtype=np.int64)
    mul = np.empty((N, N), dtype=np.int64)
    for lo, hi in _pair_blocks(N):
        X = V[lo:hi, None, :]
        Y = V[None, :, :]
        add[lo:hi] = _encode_rows(A[X, Y], w)
        coeffs = np.empty((hi - lo, N, n), dtype=np.int64)
        for k in range(n):
            acc = None
            for i in range(k + 1):
                t = Mb[X[..., i], powers[i][Y[..., k - i]]]
                acc = t if acc is None else A[acc, t]
            coeffs[..., k] = acc
        mul[lo:hi] = _encode_rows(coeffs, w)
    return FiniteRing(add, mul, zero, one, label, codec, meta)


def trunc(R: FiniteRing, n: int) -> FiniteRing:
    """R[x]/(x^n)."""
    return skew_trunc(R, endo_identity(R), n)


# --- endomorphisms -----------------------------------------------------------------


def endo_identity(R: FiniteRing) -> Endomorphism:
    return Endomorphism(R, range(R.size), name="id")


def endo_swap(R: FiniteRing) -> Endomorphism:
    """(a, b) -> (b, a) on a product of two equal factors."""
    if R.meta.get("kind") != "product":
        raise EndomorphismError(f"swap needs a product ring, got {R.label}")
    R1, R2 = R.meta["factors"]
    if not (R1 is R2 or R1.tables_equal(R2)):
        raise EndomorphismError("swap needs two identical factors")
    q = R2.size
    table = [(i % q) * q + i // q for i in range(R.size)]
    return Endomorphism(R, table, name="swap")


def endo_diag_collapse(R: FiniteRing) -> Endomorphism:
    """On R_m(S): send a matrix to its diagonal value times the identity."""
    if R.meta.get("kind") != "rn":
        raise EndomorphismError(f"diagcollapse needs an Rn ring, got {R.label}")
    codec: PatternCodec = R.codec
    zb = codec.base.zero
    table = []
    for i in R.elements():
        v = codec.decode(i)
        table.append(codec.radix.encode([v[0]] + [zb] * (codec.nvars - 1)))
    return Endomorphism(R, table, name="diagcollapse")


def endo_from_table(R: FiniteRing, table, name: str = "table") -> Endomorphism:
    return Endomorphism(R, table, name=name)


def element(R: FiniteRing, literal) -> Element:
    """Element from a codec literal (vector, nested matrix, or raw index)."""
    return R.element(literal)
