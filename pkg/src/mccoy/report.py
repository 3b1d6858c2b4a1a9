"""JSON reports for verdicts, their schema, and re-verification on load."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Optional

from .checker import DEGREE_PROPERTIES, WitnessCheck, verify_witness
from .poly import Polynomial
from .ring import FiniteRing
from .verdicts import Property, Verdict, Witness

SCHEMA_FILE = "report.schema.json"


@lru_cache(maxsize=1)
def schema() -> dict:
    return json.loads(resources.files("mccoy").joinpath(SCHEMA_FILE).read_text())


def validate(doc: dict, kind: str = "report") -> None:
    """Raise jsonschema.ValidationError unless ``doc`` matches the named definition."""
    import jsonschema

    full = schema()
    sub = {"$defs": full["$defs"], "$ref": f"#/$defs/{kind}"}
    jsonschema.validate(doc, sub)


def witness_json(R: FiniteRing, w: Witness) -> dict:
    if Property(w.property) in DEGREE_PROPERTIES:
        out = {
            "f": w.f.render(),
            "g": w.g.render(),
            "side": w.side or "both",
            "coeff_vectors": [list(w.f.trimmed()), list(w.g.trimmed())],
        }
        if w.cross is not None:
            out["cross"] = list(w.cross)
        return out
    return {
        "elements": [int(e) for e in w.elements],
        "rendered": [R.render(e) for e in w.elements],
    }


def verdict_report(expr: str, R: FiniteRing, verdict: Verdict, elapsed_ms: int,
                   suite_item: Optional[str] = None) -> dict:
    doc = {
        "ring": expr,
        "property": str(verdict.property),
        "bound": verdict.bound,
        "verdict": verdict.outcome,
    }
    if verdict.witness is not None:
        doc["witness"] = witness_json(R, verdict.witness)
    doc["elapsed_ms"] = int(elapsed_ms)
    if suite_item is not None:
        doc["suite_item"] = suite_item
    return doc


def witness_from_report(R: FiniteRing, doc: dict) -> Witness:
    """Rebuild the witness embedded in a report over the ring it names."""
    prop = Property(doc["property"])
    w = doc["witness"]
    if prop in DEGREE_PROPERTIES:
        fv, gv = w["coeff_vectors"]
        cross = tuple(w["cross"]) if "cross" in w else None
        side = w.get("side")
        return Witness(prop, Polynomial(R, tuple(fv)), Polynomial(R, tuple(gv)),
                       side=None if side == "both" else side, cross=cross)
    return Witness(prop, elements=tuple(w["elements"]))


def reverify_report(R: FiniteRing, doc: dict) -> WitnessCheck:
    """verify_witness applied to a report's witness; reports without one pass trivially."""
    if "witness" not in doc:
        return WitnessCheck({"no witness claimed": doc["verdict"] not in ("refuted", "fails")})
    return verify_witness(R, witness_from_report(R, doc))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
