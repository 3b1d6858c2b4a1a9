"""The verification manifest: each item rebuilds a published construction and
checks the claim it carries, at bounded degree where the claim is McCoy-type.

Items share one :class:`SuiteContext`, so a ring named by the same
expression is built once and a (ring, property, bound) verdict is computed
once per run.  Output is deterministic apart from ``elapsed_ms``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import constructions as C
from .checker import (
    DEFAULT_DEGREE,
    DEGREE_PROPERTIES,
    probe_polyring_mccoy,
    run_check,
    matrix_unit_witness,
    transfer_suite,
    verify_witness,
)
from .dsl import evaluate, parse, render
from .poly import SkewPolynomial, YPolynomial
from .report import reverify_report, verdict_report
from .ring import (
    find_isomorphism,
    ideals,
    idempotents,
    is_rigid,
    regular_elements,
    units,
)
from .verdicts import FAILS, HOLDS, REFUTED, VERIFIED, Property

# degree D is used only while |R|^(D+1) stays below this; larger rings drop to a lower D
MAX_SEARCH_COST = 1 << 19


def capped_degree(size: int, D: int, max_cost: int = MAX_SEARCH_COST) -> int:
    d = D
    while d > 1 and size ** (d + 1) > max_cost:
        d -= 1
    return d


@dataclass
class Check:
    name: str
    expected: str
    observed: str
    ok: bool
    report: Optional[dict] = None

    def to_json(self) -> dict:
        doc = {"name": self.name, "expected": self.expected, "observed": self.observed,
               "ok": self.ok}
        if self.report is not None:
            doc["report"] = self.report
        return doc


@dataclass
class ItemResult:
    key: str
    anchor: str
    expectation: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"key": self.key, "anchor": self.anchor, "expectation": self.expectation,
                "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


class SuiteContext:
    def __init__(self, degree: int = DEFAULT_DEGREE, threads: int = 1):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        self.threads = threads
        self.rings: dict = {}
        self.verdicts: dict = {}
        self.item: Optional[str] = None

    def ring(self, expr: str):
        key = render(parse(expr))
        if key not in self.rings:
            self.rings[key] = evaluate(key, self.rings)
        return self.rings[key]

    def bound(self, expr: str, bound: Optional[int] = None) -> int:
        return bound if bound is not None else capped_degree(self.ring(expr).size, self.degree)

    def verdict(self, expr: str, prop, bound: Optional[int] = None):
        prop = Property(prop)
        key = render(parse(expr))
        R = self.ring(key)
        b = self.bound(key, bound) if prop in DEGREE_PROPERTIES else None
        ck = (key, prop, b)
        if ck not in self.verdicts:
            t0 = time.perf_counter()
            v = run_check(R, prop, b or 1, self.threads)
            self.verdicts[ck] = (v, int((time.perf_counter() - t0) * 1000))
        v, ms = self.verdicts[ck]
        return R, v, verdict_report(key, R, v, ms, self.item)

    def expect_verdict(self, expr: str, prop, outcome: str, bound: Optional[int] = None,
                       name: Optional[str] = None) -> Check:
        R, v, doc = self.verdict(expr, prop, bound)
        ok = v.outcome == outcome
        if v.witness is not None:
            ok = ok and reverify_report(R, doc).ok
        label = name or f"{Property(prop)} {render(parse(expr))}"
        want = outcome if v.bound is None else f"{outcome} at D={v.bound}"
        return Check(label, want, str(v), ok, doc)

    @staticmethod
    def expect(name: str, expected, observed, ok: Optional[bool] = None) -> Check:
        ok = (expected == observed) if ok is None else ok
        return Check(name, str(expected), str(observed), bool(ok))


# --- items -----------------------------------------------------------------------------------


def _both_sides(ctx, expr, outcome, bound=None):
    return [ctx.expect_verdict(expr, p, outcome, bound)
            for p in (Property.RIGHT_MCCOY, Property.LEFT_MCCOY)]


def item_rn(ctx: SuiteContext):
    """R_n(R) is right (left) McCoy iff R is."""
    out = []
    for base, ns in (("Z(2)", (1, 2, 3)), ("Z(4)", (1, 2, 3)), ("T(2,Z(2))", (1, 2))):
        for prop in (Property.RIGHT_MCCOY, Property.LEFT_MCCOY):
            refuting = base.startswith("T")
            bound = 1 if refuting else None
            _, bv, _ = ctx.verdict(base, prop, bound)
            out.append(ctx.expect_verdict(base, prop, REFUTED if refuting else VERIFIED, bound))
            for n in ns:
                out.append(ctx.expect_verdict(f"Rn({n},{base})", prop, bv.outcome, bound))
    return out


def item_matrix(ctx: SuiteContext):
    """Block witnesses refute McCoy on both sides in M_n(R) and T_n(R)."""
    out = []
    for base in ("Z(2)", "Z(4)"):
        R = ctx.ring(base)
        for n in (2, 3):
            for amb in ("M", "T"):
                S = ctx.ring(f"{amb}({n},{base})")
                for side in ("right", "left"):
                    w = matrix_unit_witness(n, R, side, S)
                    rep = verify_witness(S, w)
                    out.append(ctx.expect(
                        f"block witness {amb}({n},{base}) {side}: {w.describe()}",
                        "all clauses pass", "pass" if rep.ok else f"fails {rep.failed}",
                        rep.ok))
    for expr in ("T(2,Z(2))", "M(2,Z(2))", "T(2,Z(4))", "M(2,Z(4))", "T(3,Z(2))"):
        out += _both_sides(ctx, expr, REFUTED, bound=1)
    return out


def item_v(ctx: SuiteContext):
    """V(R) is right (left) McCoy iff R is; V(R) is not abelian."""
    out = _both_sides(ctx, "V(Z(2))", VERIFIED)
    out.append(ctx.expect_verdict("V(Z(2))", Property.ABELIAN, FAILS))
    out.append(ctx.expect_verdict("V(Z(2))", Property.ARMENDARIZ, REFUTED, bound=1))
    return out


def item_corners(ctx: SuiteContext):
    """A corner of a McCoy ring need not be McCoy, and McCoy corners do not force McCoy."""
    out = []
    T = ctx.ring("T(2,Z(2))")
    Z2 = ctx.ring("Z(2)")
    nontrivial = sorted(e.index for e in idempotents(T) if e.index not in (T.zero, T.one))
    listed = sorted(T.element(m).index for m in
                    ([[1, 0], [0, 0]], [[0, 0], [0, 1]], [[1, 1], [0, 0]], [[0, 1], [0, 1]]))
    out.append(ctx.expect("nontrivial idempotents of T(2,Z(2))",
                          [T.render(e) for e in listed], [T.render(e) for e in nontrivial]))
    for e in nontrivial:
        expr = f"corner(T(2,Z(2)),#{e})"
        iso = find_isomorphism(ctx.ring(expr), Z2) is not None
        out.append(ctx.expect(f"{expr} isomorphic to Z(2)", True, iso))
        out += _both_sides(ctx, expr, VERIFIED)
    out += _both_sides(ctx, "T(2,Z(2))", REFUTED, bound=1)
    out += _both_sides(ctx, "V(Z(2))", VERIFIED)
    corner = "corner(V(Z(2)),[1,1,0,0,0,0])"
    iso = find_isomorphism(ctx.ring(corner), T) is not None
    out.append(ctx.expect(f"{corner} isomorphic to T(2,Z(2))", True, iso))
    out += _both_sides(ctx, corner, REFUTED, bound=1)
    return out


def item_products(ctx: SuiteContext):
    """R1 x R2 is right McCoy when both factors are; a refuted factor refutes the product."""
    out = []
    for a, b in (("Z(2)", "Z(4)"), ("Z(4)", "Z(4)"), ("Z(2)", "trunc(Z(2),2)"),
                 ("Z(4)", "Rn(2,Z(2))")):
        out += _both_sides(ctx, f"prod({a},{b})", VERIFIED)
    out += _both_sides(ctx, "prod(T(2,Z(2)),Z(2))", REFUTED, bound=1)
    return out + item_transfer(ctx)


def _ideal_shape(T, I):
    """Which cells of the 2x2 upper triangular pattern the ideal fills."""
    cells = set()
    for m in I.members:
        mat = T.codec.matrix(m)
        cells |= {(i, j) for i in range(2) for j in range(2) if mat[i][j] != 0}
    return frozenset(cells)


def item_ideals(ctx: SuiteContext):
    """Every nonzero proper ideal of T_2(F) and its quotient are McCoy, yet T_2(F) is not."""
    out = []
    T = ctx.ring("T(2,Z(2))")
    found = ideals(T)
    proper = [k for k, I in enumerate(found) if 1 < len(I) < T.size]
    out.append(ctx.expect("nonzero proper ideals of T(2,Z(2))", 3, len(proper)))
    quotients = {
        frozenset({(0, 0), (0, 1)}): "Z(2)",
        frozenset({(0, 1), (1, 1)}): "Z(2)",
        frozenset({(0, 1)}): "prod(Z(2),Z(2))",
    }
    for k in proper:
        shape = _ideal_shape(T, found[k])
        cells = " ".join(f"e{i + 1}{j + 1}" for i, j in sorted(shape))
        expr = f"quot(T(2,Z(2)),{k})"
        target = quotients.get(shape)
        iso = target is not None and find_isomorphism(ctx.ring(expr), ctx.ring(target)) is not None
        out.append(ctx.expect(f"ideal {k} ({cells}): {expr} isomorphic to {target}",
                              True, iso))
        out += _both_sides(ctx, expr, VERIFIED)
        out += _ideal_ring_checks(ctx, k, found[k])
    out += _both_sides(ctx, "T(2,Z(2))", REFUTED, bound=1)
    return out


def _ideal_ring_checks(ctx, k, I):
    key = f"ideal:{k}:T(2,Z(2))"
    R = ctx.rings.get(key)
    if R is None:
        R = ctx.rings[key] = C.ideal_as_ring(I, label=f"ideal {k} of T(2,Z(2))")
    out = []
    for prop in (Property.RIGHT_MCCOY, Property.LEFT_MCCOY):
        b = capped_degree(R.size, ctx.degree)
        ck = (key, prop, b)
        if ck not in ctx.verdicts:
            t0 = time.perf_counter()
            v = run_check(R, prop, b, ctx.threads)
            ctx.verdicts[ck] = (v, int((time.perf_counter() - t0) * 1000))
        v, _ = ctx.verdicts[ck]
        out.append(ctx.expect(f"{prop} of {R.label} as a ring without identity",
                              f"{VERIFIED} at D={b}", str(v), v.outcome == VERIFIED))
    return out


SUITE_RINGS = (
    "Z(2)", "Z(3)", "Z(4)", "Z(6)", "Z(8)", "prod(Z(2),Z(2))", "prod(Z(2),Z(4))",
    "T(2,Z(2))", "M(2,Z(2))", "T(2,Z(4))", "M(2,Z(4))", "T(3,Z(2))", "M(3,Z(2))",
    "Rn(2,Z(2))", "Rn(3,Z(2))", "Rn(2,Z(4))", "Rn(4,Z(2))", "V(Z(2))",
    "trunc(Z(2),2)", "trunc(Z(2),3)", "trunc(Z(4),2)", "trunc(T(2,Z(2)),2)",
    "skewquot(prod(Z(2),Z(2)),swap,2)", "skewquot(prod(Z(2),Z(2)),swap,3)",
    "skewquot(Rn(2,Z(2)),diagcollapse,2)", "prod(T(2,Z(2)),Z(2))",
    "corner(V(Z(2)),[1,1,0,0,0,0])", "op(T(2,Z(2)))",
)


def item_regular(ctx: SuiteContext):
    """In a finite ring with identity the regular elements are exactly the units."""
    out = []
    for expr in SUITE_RINGS:
        R = ctx.ring(expr)
        reg = sorted(e.index for e in regular_elements(R))
        uni = sorted(e.index for e in units(R))
        out.append(ctx.expect(f"regular = units in {expr} ({len(uni)} units)", True, reg == uni))
    return out


def item_skew_trunc(ctx: SuiteContext):
    """Transfer between R and R[x; alpha]/(x^n) on each side."""
    out = []
    # right side: iff, for any endomorphism
    out.append(ctx.expect_verdict("Z(4)", Property.RIGHT_MCCOY, VERIFIED))
    out.append(ctx.expect_verdict("trunc(Z(4),2)", Property.RIGHT_MCCOY, VERIFIED))
    for n in (2, 3):
        out.append(ctx.expect_verdict(f"skewquot(prod(Z(2),Z(2)),swap,{n})",
                                      Property.RIGHT_MCCOY, VERIFIED))
    out.append(ctx.expect_verdict("T(2,Z(2))", Property.RIGHT_MCCOY, REFUTED, bound=1))
    out.append(ctx.expect_verdict("trunc(T(2,Z(2)),2)", Property.RIGHT_MCCOY, REFUTED, bound=1))
    out.append(ctx.expect_verdict("skewquot(T(2,Z(2)),id,2)", Property.RIGHT_MCCOY, REFUTED,
                                  bound=1))
    # left side, injective alpha: swap is an automorphism of Z2 x Z2
    swap = ctx.ring("skewquot(prod(Z(2),Z(2)),swap,2)").meta["endo"]
    out.append(ctx.expect("swap is injective", True, swap.is_injective()))
    for n in (2, 3):
        out.append(ctx.expect_verdict(f"skewquot(prod(Z(2),Z(2)),swap,{n})",
                                      Property.LEFT_MCCOY, VERIFIED))
    # left side, idempotent alpha
    dc = ctx.ring("skewquot(Rn(2,Z(2)),diagcollapse,2)").meta["endo"]
    out.append(ctx.expect("diagcollapse is idempotent", True, dc.is_idempotent()))
    out.append(ctx.expect_verdict("skewquot(Rn(2,Z(2)),diagcollapse,2)", Property.LEFT_MCCOY,
                                  VERIFIED))
    # automorphism and a left McCoy quotient force a left McCoy base; contrapositive with id
    out.append(ctx.expect_verdict("T(2,Z(2))", Property.LEFT_MCCOY, REFUTED, bound=1))
    out.append(ctx.expect_verdict("trunc(T(2,Z(2)),2)", Property.LEFT_MCCOY, REFUTED, bound=1))
    return out


def item_diag_collapse(ctx: SuiteContext):
    """A non-injective, non-surjective idempotent endomorphism still gives a left McCoy quotient."""
    out = []
    for m in (2, 3):
        expr = f"skewquot(Rn({m},Z(2)),diagcollapse,2)"
        a = ctx.ring(expr).meta["endo"]
        out.append(ctx.expect(f"diagcollapse on Rn({m},Z(2)): idempotent", True, a.is_idempotent()))
        out.append(ctx.expect(f"diagcollapse on Rn({m},Z(2)): injective", False, a.is_injective()))
        out.append(ctx.expect(f"diagcollapse on Rn({m},Z(2)): surjective", False,
                              a.is_surjective()))
        out.append(ctx.expect_verdict(f"Rn({m},Z(2))", Property.LEFT_MCCOY, VERIFIED))
        out.append(ctx.expect_verdict(expr, Property.LEFT_MCCOY, VERIFIED))
    return out


def item_trunc(ctx: SuiteContext):
    """R is right McCoy iff R[x]/(x^n) is; R[x] inherits annihilators from R."""
    out = []
    for expr in ("trunc(Z(2),2)", "trunc(Z(2),3)", "trunc(Z(4),2)", "trunc(prod(Z(2),Z(2)),2)",
                 "trunc(Z(6),2)"):
        out.append(ctx.expect_verdict(expr, Property.RIGHT_MCCOY, VERIFIED))
    out.append(ctx.expect_verdict("trunc(T(2,Z(2)),2)", Property.RIGHT_MCCOY, REFUTED, bound=1))
    Z4 = ctx.ring("Z(4)")
    ident = C.endo_identity(Z4)
    f = YPolynomial([SkewPolynomial(Z4, (2,), ident)])
    g = YPolynomial([SkewPolynomial(Z4, (2,), ident), SkewPolynomial(Z4, (2,), ident)])
    res = probe_polyring_mccoy(Z4, ident, f, g, 2, "right")
    out.append(ctx.expect("Z(4)[x]: f(y) = 2, g(y) = 2 + 2y has a constant right annihilator",
                          "AnnihilatorFound((2))", str(res),
                          res.found is not None and res.found.trimmed() == (2,)))
    return out


def item_rigid(ctx: SuiteContext):
    """alpha-rigid R gives a McCoy R[x; alpha]/(x^n)."""
    out = []
    cases = (("Z(2)", "id", HOLDS), ("Z(3)", "id", HOLDS), ("prod(Z(2),Z(2))", "id", HOLDS),
             ("Z(4)", "id", FAILS), ("prod(Z(2),Z(2))", "swap", FAILS))
    for base, endo, want in cases:
        R = ctx.ring(base)
        alpha = C.endo_identity(R) if endo == "id" else C.endo_swap(R)
        v = is_rigid(R, alpha)
        out.append(ctx.expect(f"{base} is {endo}-rigid", want, str(v), v.outcome == want))
    for expr in ("trunc(Z(2),3)", "trunc(Z(3),2)", "skewquot(prod(Z(2),Z(2)),id,2)",
                 "trunc(prod(Z(2),Z(2)),2)"):
        out += _both_sides(ctx, expr, VERIFIED)
    return out


def item_skew_poly(ctx: SuiteContext):
    """Z2 x Z2 with the swap: R and R[x; alpha]/(x^n) are McCoy but R[x; alpha] is not."""
    out = []
    R = ctx.ring("prod(Z(2),Z(2))")
    alpha = ctx.ring("skewquot(prod(Z(2),Z(2)),swap,2)").meta["endo"]
    e1 = R.element([1, 0]).index
    e2 = R.element([0, 1]).index
    z = R.zero
    p = lambda *c: SkewPolynomial(R, tuple(c), alpha)  # noqa: E731
    f = YPolynomial([p(e1), p(z, e1)])
    g = YPolynomial([p(e2), p(z, e1)])
    out.append(ctx.expect(f"f(y) g(y) = 0 for f = {f.render()}, g = {g.render()}",
                          True, (f * g).is_zero()))
    for side in ("right", "left"):
        res = probe_polyring_mccoy(R, alpha, f, g, 4, side)
        out.append(ctx.expect(f"{side} annihilators of degree <= 4 in R[x; swap]",
                              "NoneUpTo(4)", str(res)))
    out += _both_sides(ctx, "prod(Z(2),Z(2))", VERIFIED)
    for n in (2, 3):
        out += _both_sides(ctx, f"skewquot(prod(Z(2),Z(2)),swap,{n})", VERIFIED)
    return out


def item_armendariz(ctx: SuiteContext):
    """R_4 over a McCoy ring is McCoy but not Armendariz."""
    return [
        ctx.expect_verdict("Rn(4,Z(2))", Property.ARMENDARIZ, REFUTED, bound=1),
        ctx.expect_verdict("Rn(4,Z(2))", Property.RIGHT_MCCOY, VERIFIED, bound=1),
        ctx.expect_verdict("Rn(4,Z(2))", Property.LEFT_MCCOY, VERIFIED, bound=1),
        ctx.expect_verdict("Z(2)", Property.ARMENDARIZ, VERIFIED),
    ]


def item_transfer(ctx: SuiteContext):
    """Transfer report for a McCoy base and a refuted base."""
    out = []
    for base, D in (("Z(4)", None), ("T(2,Z(2))", 1)):
        R = ctx.ring(base)
        D = D or ctx.degree
        rep = transfer_suite(R, D, ctx.threads)
        for line, e in zip(rep.lines()[1:], rep.entries):
            out.append(ctx.expect(line.strip(), e.expected, e.verdict.outcome, e.agrees))
    return out


@dataclass(frozen=True)
class Item:
    key: str
    anchor: str
    expectation: str
    run: Callable


MANIFEST = (
    Item("lemma2.1", "R is right (left) McCoy iff R_n is, for every n >= 1",
         "Rn(n,R) matches the verdict of R on both sides for R in {Z2, Z4, T2(Z2)}", item_rn),
    Item("thm2.2", "M_n(R) and T_n(R) are neither left nor right McCoy for n > 1",
         "block witnesses verify in M_n and T_n over Z2 and Z4 for n = 2, 3 on both sides; "
         "the searches refute the small cases at D=1", item_matrix),
    Item("ex2.3", "V(R) is right (left) McCoy iff R is",
         "V(Z2) verified on both sides, not abelian, not Armendariz", item_v),
    Item("rem2.4", "corners versus McCoy in both directions",
         "T2(Z2) has four nontrivial idempotents with corners isomorphic to Z2; "
         "the corner of V(Z2) at e11+e22+e44+e55 is isomorphic to T2(Z2) and refuted",
         item_corners),
    Item("prop3.1", "a direct product of right McCoy rings is right McCoy",
         "products of verified factors verify; T2(Z2) x Z2 is refuted; transfer reports for "
         "Z4 and T2(Z2) agree", item_products),
    Item("ex3.2", "T2(F) is not McCoy although every nonzero proper ideal I and R/I are",
         "exactly 3 nonzero proper ideals; each ideal and each quotient verified, "
         "quotients isomorphic to F, F and F x F", item_ideals),
    Item("thm3.3-finite", "regular elements of a finite ring with identity are units",
         "regular elements equal units on every suite ring", item_regular),
    Item("prop3.5", "transfer between R and R[x; alpha]/(x^n)",
         "right side: verdicts agree; left side: injective or idempotent alpha preserves, "
         "identity reflects", item_skew_trunc),
    Item("ex3.6", "alpha(A) = aI on R_m is idempotent, neither injective nor surjective, "
                  "and R_m[x; alpha]/(x^n) is left McCoy",
         "diagcollapse checks on Rn(2) and Rn(3) over Z2 and a verified left McCoy quotient",
         item_diag_collapse),
    Item("thm3.8-trunc", "R is right McCoy iff R[x]/(x^n) is",
         "truncations of verified rings verify; trunc(T2(Z2),2) refuted; a Z4[x] probe "
         "finds a constant annihilator", item_trunc),
    Item("cor3.10", "alpha-rigid R gives a McCoy R[x; alpha]/(x^n)",
         "rigidity verdicts for Z2, Z3, Z4, Z2 x Z2 and quotients of rigid rings verified",
         item_rigid),
    Item("ex3.11", "over Z2 x Z2 with the swap, R[x; alpha]/(x^n) is McCoy but R[x; alpha] "
                   "is neither left nor right McCoy",
         "f(y) g(y) = 0 exactly; no annihilator of degree <= 4 on either side; the quotients "
         "for n = 2, 3 verified", item_skew_poly),
    Item("armendariz-r4", "R_4 over a McCoy ring is McCoy but not Armendariz",
         "Rn(4,Z2): Armendariz refuted at D=1, right and left McCoy verified at D=1",
         item_armendariz),
)

ITEMS = {it.key: it for it in MANIFEST}


def run_item(key: str, ctx: SuiteContext) -> ItemResult:
    if key not in ITEMS:
        raise KeyError(f"unknown suite item {key!r}; known: {', '.join(ITEMS)}")
    it = ITEMS[key]
    ctx.item = key
    try:
        checks = it.run(ctx)
    finally:
        ctx.item = None
    return ItemResult(it.key, it.anchor, it.expectation, checks)


def run_suite(keys=None, degree: int = DEFAULT_DEGREE, threads: int = 1) -> dict:
    ctx = SuiteContext(degree, threads)
    t0 = time.perf_counter()
    results = [run_item(k, ctx) for k in (keys or list(ITEMS))]
    return {
        "degree": degree,
        "items": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
        "elapsed_ms": int((time.perf_counter() - t0) * 1000),
    }


def strip_timing(doc):
    """Copy of a report with every elapsed_ms removed (for determinism comparisons)."""
    if isinstance(doc, dict):
        return {k: strip_timing(v) for k, v in doc.items() if k != "elapsed_ms"}
    if isinstance(doc, list):
        return [strip_timing(v) for v in doc]
    return doc
