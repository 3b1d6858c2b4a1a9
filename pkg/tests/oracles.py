"""Brute-force reference implementations, independent of the pruned searches.

Everything here works straight from the multiplication and addition tables
with no bitsets, no shift reductions and no early pruning.
"""

import itertools


def all_vectors(n, D):
    """Counting order: c_0 varies fastest."""
    for top_first in itertools.product(range(n), repeat=D + 1):
        yield top_first[::-1]


def convolve(R, a, b):
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def common_right_annihilator(R, coeffs):
    return [t for t in R.elements() if all(R.mul(c, t) == R.zero for c in coeffs)]


def naive_right_mccoy(R, D):
    """First (f, g) in counting order with fg = 0 and trivial right annihilator of f."""
    z = R.zero
    vecs = [v for v in all_vectors(R.size, D) if any(c != z for c in v)]
    for f in vecs:
        if common_right_annihilator(R, f) != [z]:
            continue
        for g in vecs:
            if all(c == z for c in convolve(R, f, g)):
                return tuple(f), tuple(g)
    return None


def naive_armendariz(R, D):
    z = R.zero
    vecs = [v for v in all_vectors(R.size, D) if any(c != z for c in v)]
    for f in vecs:
        for g in vecs:
            if all(c == z for c in convolve(R, f, g)) and any(
                R.mul(x, y) != z for x in f for y in g
            ):
                return tuple(f), tuple(g)
    return None


def brute_isomorphic(R, S):
    """Try every bijection; only for carriers up to about 8 elements."""
    if R.size != S.size:
        return False
    for perm in itertools.permutations(range(S.size)):
        if all(
            perm[R.add(a, b)] == S.add(perm[a], perm[b])
            and perm[R.mul(a, b)] == S.mul(perm[a], perm[b])
            for a in R.elements()
            for b in R.elements()
        ):
            return True
    return False
