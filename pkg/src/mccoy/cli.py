"""Command-line front end.

Exit codes: 0 verified/holds (or success), 3 refuted/fails, 1 usage error,
2 parse or evaluation error.  ``--format json`` prints a report (or an
error object) on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .checker import DEFAULT_DEGREE, DEGREE_PROPERTIES, default_threads, run_check
from .dsl import EvalError, ParseError, evaluate, parse, render
from .report import dumps, verdict_report
from .ring import (
    RingError,
    UnsupportedOperation,
    dumps_ring,
    ideals,
    idempotents,
    load_ring,
    regular_elements,
    units,
)
from .suite import ITEMS, run_suite
from .verdicts import Property

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EVAL = 2
EXIT_REFUTED = 3

CHECKABLE = [p.value for p in Property if p is not Property.RIGID]

RING_HELP = """ring expression, e.g. "M(2,Z(4))", "skewquot(prod(Z(2),Z(2)),swap,2)",
"corner(V(Z(2)),[1,1,0,0,0,0])" or "load(\\"ring.json\\")".  Element literals are
codec vectors: nested rows for M/T, pattern entries for Rn (diagonal first) and
V (a,b,c,d,e,f), pairs for prod, coefficient lists for trunc/skewquot, or #k
for the raw element index k."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mccoy", description="Bounded McCoy-property checks on finite rings.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("check", help="check one property of a ring")
    c.add_argument("--ring", required=True, help=RING_HELP)
    c.add_argument("--property", required=True, choices=CHECKABLE)
    c.add_argument("--degree", type=int, default=DEFAULT_DEGREE,
                   help="polynomial degree bound D >= 1 (default 2)")
    c.add_argument("--threads", type=int, default=default_threads())
    fmt(c)

    i = sub.add_parser("info", help="size, identity, idempotents, units, regular elements, ideals")
    i.add_argument("--ring", required=True, help=RING_HELP)
    fmt(i)

    v = sub.add_parser("verify-paper", help="run the verification manifest")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--item", action="append", choices=list(ITEMS), help="manifest key (repeatable)")
    g.add_argument("--all", action="store_true")
    v.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    v.add_argument("--threads", type=int, default=default_threads())
    fmt(v)

    e = sub.add_parser("export", help="write a ring's tables as JSON")
    e.add_argument("--ring", required=True, help=RING_HELP)
    e.add_argument("--out", required=True)

    m = sub.add_parser("import", help="load and validate a ring JSON file")
    m.add_argument("--in", dest="infile", required=True)
    fmt(m)
    return p


def _error(kind: str, message: str, code: int, as_json: bool, **extra) -> int:
    if as_json:
        doc = {"error": kind, "message": message, "exit_code": code, **extra}
        print(json.dumps(doc, indent=2))
    else:
        print(f"error: {message}", file=sys.stderr)
    return code


def _ring(text: str):
    expr = parse(text)
    return render(expr), evaluate(expr)


def cmd_check(args) -> int:
    if args.degree < 1:
        raise UsageError("--degree must be >= 1")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    expr, R = _ring(args.ring)
    prop = Property(args.property)
    t0 = time.perf_counter()
    v = run_check(R, prop, args.degree, args.threads)
    ms = int((time.perf_counter() - t0) * 1000)
    doc = verdict_report(expr, R, v, ms)
    if args.format == "json":
        print(dumps(doc))
    else:
        print(f"ring: {expr} ({R.size} elements)")
        print(f"property: {prop}")
        if prop in DEGREE_PROPERTIES:
            print(f"bound: {v.bound}")
        print(f"verdict: {v.outcome}")
        if v.witness is not None:
            print(f"witness: {v.witness.describe(R)}")
        print(f"elapsed_ms: {ms}")
    return EXIT_REFUTED if v.refuted else EXIT_OK


def ring_info(expr: str, R) -> dict:
    idem = sorted(e.index for e in idempotents(R))
    found = ideals(R)
    doc = {
        "ring": expr,
        "size": R.size,
        "unital": R.is_unital,
        "commutative": R.is_commutative(),
        "idempotents": [R.render(e) for e in idem],
        "nontrivial_idempotents": len([e for e in idem if e not in (R.zero, R.one)]),
        "units": [R.render(u) for u in sorted(x.index for x in units(R))] if R.is_unital else None,
        "regular": [R.render(r) for r in sorted(x.index for x in regular_elements(R))],
        "ideals": len(found),
        "nonzero_proper_ideals": len([I for I in found if 1 < len(I) < R.size]),
    }
    return doc


def _print_info(doc: dict):
    print(f"ring: {doc['ring']}")
    print(f"size: {doc['size']}")
    print(f"unital: {'yes' if doc['unital'] else 'no'}")
    print(f"commutative: {'yes' if doc['commutative'] else 'no'}")
    print(f"idempotents ({len(doc['idempotents'])}, {doc['nontrivial_idempotents']} nontrivial): "
          + ", ".join(doc["idempotents"]))
    if doc["units"] is not None:
        print(f"units ({len(doc['units'])}): " + ", ".join(doc["units"]))
    print(f"regular elements ({len(doc['regular'])}): " + ", ".join(doc["regular"]))
    print(f"ideals: {doc['ideals']} ({doc['nonzero_proper_ideals']} nonzero proper)")


def cmd_info(args) -> int:
    expr, R = _ring(args.ring)
    doc = ring_info(expr, R)
    if args.format == "json":
        print(dumps(doc))
    else:
        _print_info(doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.degree < 1:
        raise UsageError("--degree must be >= 1")
    keys = list(ITEMS) if args.all else args.item
    doc = run_suite(keys, args.degree, args.threads)
    if args.format == "json":
        print(dumps(doc))
    else:
        for item in doc["items"]:
            mark = "PASS" if item["passed"] else "FAIL"
            print(f"{mark} {item['key']}: {item['anchor']}")
            print(f"     expect: {item['expectation']}")
            for c in item["checks"]:
                if not c["ok"]:
                    print(f"     failed: {c['name']}: expected {c['expected']}, got {c['observed']}")
        passed = sum(i["passed"] for i in doc["items"])
        print(f"{passed}/{len(doc['items'])} items passed at degree {args.degree} "
              f"in {doc['elapsed_ms']} ms")
    return EXIT_OK if doc["passed"] else EXIT_REFUTED


def cmd_export(args) -> int:
    expr, R = _ring(args.ring)
    text = dumps_ring(R)
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {expr} ({R.size} elements) to {args.out}")
    return EXIT_OK


def cmd_import(args) -> int:
    R = load_ring(args.infile)
    expr = f"load({json.dumps(args.infile)})"
    doc = ring_info(expr, R)
    if args.format == "json":
        print(dumps(doc))
    else:
        print(f"imported {args.infile}: {R.size} elements, ring laws hold")
        _print_info(doc)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "info": cmd_info,
    "verify-paper": cmd_verify,
    "export": cmd_export,
    "import": cmd_import,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--format=json" in argv or any(
        a == "--format" and b == "json" for a, b in zip(argv, argv[1:]))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        if not want_json:
            parser.print_usage(sys.stderr)
        return _error("usage", str(exc), EXIT_USAGE, want_json)
    except ParseError as exc:
        return _error("parse", str(exc), EXIT_EVAL, want_json, line=exc.line,
                      column=exc.column, expected=list(exc.expected))
    except (EvalError, RingError, UnsupportedOperation, OSError, ValueError) as exc:
        return _error("evaluation", str(exc), EXIT_EVAL, want_json)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
