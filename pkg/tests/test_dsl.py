import json
import re
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

import mccoy.suite as suite_module
from mccoy import constructions as C
from mccoy.dsl import (
    EndoExpr,
    EvalError,
    Int,
    Literal,
    ParseError,
    RingExpr,
    evaluate,
    parse,
    render,
)
from mccoy.ring import dumps_ring, ideals

from zoo import ZOO_EXPRS


def suite_expressions():
    """Every quoted string in the manifest source that parses as a ring expression."""
    src = Path(suite_module.__file__).read_text()
    found = set(suite_module.SUITE_RINGS)
    for text in re.findall(r'"([A-Za-z][^"\n]*\))"', src):
        try:
            parse(text)
        except ParseError:
            continue
        found.add(text)
    return sorted(found)


SUITE_EXPRS = suite_expressions()


def test_simple_trees():
    assert parse("M(2,Z(4))") == RingExpr("M", (Int(2), RingExpr("Z", (Int(4),))))
    e = parse("skewquot(prod(Z(2),Z(2)),swap,2)")
    assert e.ctor == "skewquot" and e.args[1] == EndoExpr("swap") and e.args[2] == Int(2)
    c = parse("corner(V(Z(2)), [1,1,0,0,0,0])")
    assert c.args[1] == Literal((1, 1, 0, 0, 0, 0))
    assert parse("corner(T(2,Z(2)),#4)").args[1] == Literal(4, raw=True)
    assert parse('load("x.json")').args[0].value == "x.json"
    assert parse('skewquot(Z(4),table("m.json"),2)').args[1] == EndoExpr("table", "m.json")


def test_whitespace_is_insignificant():
    assert parse(" prod ( Z(2) ,\n  Z( 3 ) ) ") == parse("prod(Z(2),Z(3))")


def test_missing_paren_reports_end_of_input():
    with pytest.raises(ParseError) as info:
        parse("V(Z(2)")
    err = info.value
    assert (err.line, err.column) == (1, 7)
    assert "')'" in err.expected
    assert str(err).startswith("line 1, column 7")


def test_error_positions_span_lines():
    with pytest.raises(ParseError) as info:
        parse("prod(Z(2),\n  Q(3))")
    assert (info.value.line, info.value.column) == (2, 3)
    assert "unknown constructor" in info.value.message


@pytest.mark.parametrize("text", [
    "Z(2", "Z()", "Z(2,3)", "M(Z(2))", "M(2)", "prod(Z(2))", "V(2)", "trunc(Z(2),Z(2))",
    "skewquot(Z(2),flip,2)", "corner(Z(2),Z(2))", "Z(1)", "trunc(Z(2),1)", "quot(Z(4),-1)",
    "Z(2)Z(3)", "z(2)", "op(Z(2)", "Z($)", "load(3)", "corner(Z(2),[1,)", "", "[1]",
])
def test_malformed_input_is_rejected_with_a_position(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line >= 1 and info.value.column >= 1


def test_arity_errors_name_the_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("Z(2,3)")
    assert info.value.expected == ("')'",)
    with pytest.raises(ParseError) as info:
        parse("prod(Z(2))")
    assert "','" in info.value.expected


@pytest.mark.parametrize("text", sorted(set(ZOO_EXPRS) | set(SUITE_EXPRS)))
def test_render_round_trip(text):
    e = parse(text)
    assert parse(render(e)) == e
    assert render(parse(render(e))) == render(e)


def test_manifest_is_expressible():
    assert len(SUITE_EXPRS) >= 20
    for text in SUITE_EXPRS:
        assert render(parse(text)) == text.replace(" ", "")


def int_exprs():
    base = st.sampled_from(["Z(2)", "Z(3)", "Z(4)"])
    return st.recursive(
        base,
        lambda inner: st.one_of(
            st.builds(lambda a, b: f"prod({a},{b})", inner, inner),
            st.builds(lambda n, a: f"T({n},{a})", st.integers(1, 3), inner),
            st.builds(lambda a: f"op({a})", inner),
            st.builds(lambda a, n: f"trunc({a},{n})", inner, st.integers(2, 4)),
        ),
        max_leaves=4,
    )


@given(int_exprs())
def test_round_trip_on_generated_expressions(text):
    assert render(parse(text)) == text


def test_evaluation_examples():
    T = evaluate("T(2,Z(2))")
    assert T.size == 8 and T.label == "T(2,Z(2))"
    O = evaluate("op(T(2,Z(2)))")
    assert np.array_equal(O.mul_table, T.mul_table.T)
    Q = evaluate("quot(T(2,Z(2)),2)")
    assert Q.size == 8 // len(ideals(T)[2])
    S = evaluate("skewquot(prod(Z(2),Z(2)),swap,2)")
    assert S.size == 16 and S.meta["endo"].name == "swap"


def test_evaluation_is_deterministic():
    for text in ZOO_EXPRS:
        assert dumps_ring(evaluate(text)) == dumps_ring(evaluate(text))


def test_shared_subexpressions_are_built_once():
    memo = {}
    R = evaluate("prod(T(2,Z(2)),T(2,Z(2)))", memo)
    assert R.size == 64
    assert "T(2,Z(2))" in memo and memo["T(2,Z(2))"].size == 8
    assert evaluate("T(2,Z(2))", memo) is memo["T(2,Z(2))"]


@pytest.mark.parametrize("text,needle", [
    ("quot(T(2,Z(2)),9)", "out of range"),
    ("corner(T(2,Z(2)),[[0,1],[0,0]])", "idempotent"),
    ("corner(T(2,Z(2)),[[1,1]])", "literal"),
    ("corner(T(2,Z(2)),#99)", "literal"),
    ("skewquot(prod(Z(2),Z(3)),swap,2)", "swap"),
    ("skewquot(Z(4),diagcollapse,2)", "diag"),
    ('load("/nonexistent/ring.json")', "No such file"),
    ("op(M(3,Z(4)))", "threshold"),
    ("quot(M(3,Z(4)),0)", "limit"),
])
def test_evaluation_errors(text, needle):
    with pytest.raises(EvalError) as info:
        evaluate(text)
    assert needle.lower() in str(info.value).lower()


def test_table_endomorphism_and_load(tmp_path):
    R = C.product(C.zmod(2), C.zmod(2))
    swapped = [int(C.endo_swap(R).table[i]) for i in range(R.size)]
    p = tmp_path / "swap.json"
    p.write_text(json.dumps({"map": swapped}))
    S = evaluate(f"skewquot(prod(Z(2),Z(2)),table({json.dumps(str(p))}),2)")
    T = evaluate("skewquot(prod(Z(2),Z(2)),swap,2)")
    assert np.array_equal(S.mul_table, T.mul_table)
    q = tmp_path / "proj.json"
    q.write_text(json.dumps([0, 1, 1, 0]))
    with pytest.raises(EvalError):
        evaluate(f"skewquot(prod(Z(2),Z(2)),table({json.dumps(str(q))}),2)")
    ring_file = tmp_path / "t2.json"
    ring_file.write_text(dumps_ring(evaluate("T(2,Z(2))")))
    L = evaluate(f"load({json.dumps(str(ring_file))})")
    assert L.size == 8 and L.label.startswith("load(")
