"""A small expression language naming rings.

Grammar (whitespace-insensitive)::

    expr    := NAME "(" arg ("," arg)* ")"
    arg     := INT | expr | endo | literal | STRING
    endo    := "id" | "swap" | "diagcollapse" | "table" "(" STRING ")"
    literal := "[" item ("," item)* "]" | "#" INT
    item    := INT | literal

Constructors: Z(n), prod(e, e, ...), M(n, e), T(n, e), Rn(n, e), V(e),
trunc(e, n), skewquot(e, endo, n), corner(e, literal), quot(e, k), op(e),
load("ring.json").

Element literals are codec vectors: ``[1,1,0,0,0,0]`` gives V's
(a,b,c,d,e,f) entries, ``[[1,0],[0,0]]`` a full matrix, ``[1,0]`` a pair in
a product, and ``#5`` the raw element index 5.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Optional, Union

from . import constructions as C
from .ring import (
    FiniteRing,
    RingError,
    UnsupportedOperation,
    ideals,
    load_ring,
    opposite,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = f"line {line}, column {column}"
        extra = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}: {message}{extra}")


class EvalError(ValueError):
    pass


# --- AST -------------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Str:
    value: str


@dataclass(frozen=True)
class Literal:
    value: Union[tuple, int]  # nested tuples of ints, or a raw index
    raw: bool = False


@dataclass(frozen=True)
class EndoExpr:
    name: str  # id | swap | diagcollapse | table
    path: Optional[str] = None


@dataclass(frozen=True)
class RingExpr:
    ctor: str
    args: tuple


ENDO_NAMES = ("id", "swap", "diagcollapse", "table")

# argument kinds per constructor; "ring+" is one or more trailing rings
SIGNATURES = {
    "Z": ("int",),
    "prod": ("ring", "ring+"),
    "M": ("int", "ring"),
    "T": ("int", "ring"),
    "Rn": ("int", "ring"),
    "V": ("ring",),
    "trunc": ("ring", "int"),
    "skewquot": ("ring", "endo", "int"),
    "corner": ("ring", "literal"),
    "quot": ("ring", "int"),
    "op": ("ring",),
    "load": ("string",),
}

INT_MINIMUM = {"Z": 2, "M": 1, "T": 1, "Rn": 1, "trunc": 2, "skewquot": 2, "quot": 0}


# --- tokenizer ---------------------------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<ws>\s+)|(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<string>"(?:[^"\\]|\\.)*")"""
    r"""|(?P<punct>[(),\[\]#])"""
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column, expected)

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.text != text or tok.kind not in ("punct",):
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"found {got}", (repr(text),))
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def parse(self) -> RingExpr:
        e = self.ring()
        if self.tok.kind != "eof":
            self.fail(f"trailing input {self.tok.text!r}", ("end of input",))
        return e

    def ring(self) -> RingExpr:
        tok = self.tok
        if tok.kind != "name":
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"found {got}", ("ring constructor",))
        if tok.text not in SIGNATURES:
            self.fail(f"unknown constructor {tok.text!r}", tuple(sorted(SIGNATURES)))
        self.i += 1
        ctor = tok.text
        self.expect("(")
        args = []
        kinds = SIGNATURES[ctor]
        k = 0
        while True:
            if k < len(kinds):
                kind = kinds[k]
            elif kinds[-1].endswith("+"):
                kind = kinds[-1]
            else:
                self.fail(f"{ctor} takes {len(kinds)} argument(s)", ("')'",))
            args.append(self.arg(ctor, kind.rstrip("+")))
            k += 1
            if self.at(","):
                if k >= len(kinds) and not kinds[-1].endswith("+"):
                    self.fail(f"{ctor} takes {len(kinds)} argument(s)", ("')'",))
                self.i += 1
                continue
            if k < len(kinds):
                self.fail(f"{ctor} takes {len(kinds)} argument(s), got {k}", ("','",))
            self.expect(")")
            break
        return RingExpr(ctor, tuple(args))

    def arg(self, ctor, kind):
        tok = self.tok
        if kind == "int":
            if tok.kind != "int":
                self.fail(f"{ctor} expects an integer here", ("integer",))
            self.i += 1
            value = int(tok.text)
            low = INT_MINIMUM.get(ctor)
            if low is not None and value < low:
                self.fail(f"{ctor} needs an integer >= {low}, got {value}", tok=tok)
            return Int(value)
        if kind == "ring":
            return self.ring()
        if kind == "endo":
            if tok.kind != "name" or tok.text not in ENDO_NAMES:
                self.fail("expected an endomorphism", ENDO_NAMES)
            self.i += 1
            if tok.text == "table":
                self.expect("(")
                path = self.string()
                self.expect(")")
                return EndoExpr("table", path)
            return EndoExpr(tok.text)
        if kind == "literal":
            if self.at("#"):
                self.i += 1
                t = self.tok
                if t.kind != "int":
                    self.fail("expected an element index after '#'", ("integer",))
                self.i += 1
                return Literal(int(t.text), raw=True)
            return Literal(self.literal())
        if kind == "string":
            return Str(self.string())
        raise AssertionError(kind)

    def string(self) -> str:
        tok = self.tok
        if tok.kind != "string":
            self.fail("expected a quoted string", ("string",))
        self.i += 1
        return json.loads(tok.text)

    def literal(self):
        self.expect("[")
        items = []
        while True:
            tok = self.tok
            if tok.kind == "int":
                items.append(int(tok.text))
                self.i += 1
            elif self.at("["):
                items.append(self.literal())
            else:
                self.fail("expected a literal entry", ("integer", "'['"))
            if self.at(","):
                self.i += 1
                continue
            self.expect("]")
            return tuple(items)


def parse(text: str) -> RingExpr:
    """Parse a ring expression; raises ParseError with line/column."""
    return _Parser(text).parse()


def render(node) -> str:
    """Canonical text of an AST node; parse(render(e)) == e."""
    if isinstance(node, RingExpr):
        return f"{node.ctor}(" + ",".join(render(a) for a in node.args) + ")"
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Str):
        return json.dumps(node.value)
    if isinstance(node, EndoExpr):
        return f"table({json.dumps(node.path)})" if node.name == "table" else node.name
    if isinstance(node, Literal):
        if node.raw:
            return f"#{node.value}"
        return _render_literal(node.value)
    raise TypeError(f"not an AST node: {node!r}")


def _render_literal(v):
    if isinstance(v, tuple):
        return "[" + ",".join(_render_literal(x) for x in v) + "]"
    return str(v)


# --- evaluation -----------------------------------------------------------------------


def _endomorphism(R: FiniteRing, e: EndoExpr):
    if e.name == "id":
        return C.endo_identity(R)
    if e.name == "swap":
        return C.endo_swap(R)
    if e.name == "diagcollapse":
        return C.endo_diag_collapse(R)
    with open(e.path) as fh:
        doc = json.load(fh)
    table = doc["map"] if isinstance(doc, dict) else doc
    return C.endo_from_table(R, table, name=f"table({json.dumps(e.path)})")


def evaluate(expr: Union[RingExpr, str], memo: Optional[dict] = None) -> FiniteRing:
    """Build the ring an expression denotes.

    Identical subexpressions are built once per call.  Rings from
    ``skewquot`` carry their endomorphism in ``meta['endo']``.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    memo = {} if memo is None else memo
    try:
        return _eval(expr, memo)
    except (RingError, UnsupportedOperation, OSError, KeyError, ValueError) as exc:
        if isinstance(exc, (ParseError, EvalError)):
            raise
        raise EvalError(f"{render(expr)}: {exc}") from exc


def _eval(e: RingExpr, memo: dict) -> FiniteRing:
    key = render(e)
    if key in memo:
        return memo[key]
    a = e.args
    ctor = e.ctor
    sub = lambda x: _eval(x, memo)  # noqa: E731
    if ctor == "Z":
        R = C.zmod(a[0].value)
    elif ctor == "prod":
        R = C.product_of([sub(x) for x in a])
    elif ctor == "M":
        R = C.matrix_ring(a[0].value, sub(a[1]))
    elif ctor == "T":
        R = C.upper_triangular(a[0].value, sub(a[1]))
    elif ctor == "Rn":
        R = C.rn_ring(a[0].value, sub(a[1]))
    elif ctor == "V":
        R = C.v_ring(sub(a[0]))
    elif ctor == "trunc":
        R = C.trunc(sub(a[0]), a[1].value)
    elif ctor == "skewquot":
        base = sub(a[0])
        alpha = _endomorphism(base, a[1])
        R = C.skew_trunc(base, alpha, a[2].value, label=key)
    elif ctor == "corner":
        base = sub(a[0])
        lit = a[1]
        try:
            el = base.element(lit.value) if lit.raw else base.element(list(lit.value))
        except ValueError as exc:
            raise EvalError(f"{key}: bad element literal: {exc}") from exc
        try:
            R = C.corner(base, el, label=key)
        except RingError as exc:
            raise EvalError(f"{key}: {exc}") from exc
    elif ctor == "quot":
        base = sub(a[0])
        found = ideals(base)
        k = a[1].value
        if not 0 <= k < len(found):
            raise EvalError(f"{key}: ideal index {k} out of range (ring has {len(found)} ideals)")
        R = C.quotient(base, found[k], label=key)
    elif ctor == "op":
        R = opposite(sub(a[0]))
    elif ctor == "load":
        R = load_ring(a[0].value)
        R.label = key
    else:  # pragma: no cover - parser rejects unknown names
        raise EvalError(f"unknown constructor {ctor}")
    if R.label != key:
        R.label = key
    memo[key] = R
    return R


def ring(text: str) -> FiniteRing:
    """Shorthand: parse and evaluate."""
    return evaluate(parse(text))
