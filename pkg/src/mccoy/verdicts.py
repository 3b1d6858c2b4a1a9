"""Result types shared by the ring core and the checkers."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class Property(str, Enum):
    RIGHT_MCCOY = "right-mccoy"
    LEFT_MCCOY = "left-mccoy"
    ARMENDARIZ = "armendariz"
    REVERSIBLE = "reversible"
    SEMICOMMUTATIVE = "semicommutative"
    REDUCED = "reduced"
    ABELIAN = "abelian"
    RIGID = "rigid"

    def __str__(self):
        return self.value


# outcome strings double as the JSON report "verdict" values
VERIFIED = "verified_up_to"
REFUTED = "refuted"
HOLDS = "holds"
FAILS = "fails"


@dataclass(frozen=True)
class Witness:
    """Evidence against a property.

    Polynomial properties fill ``f`` and ``g`` (and ``cross`` for
    Armendariz, the first (i, j) with a_i b_j != 0).  Element-level
    properties fill ``elements`` instead.
    """

    property: Property
    f: Any = None
    g: Any = None
    side: Optional[str] = None
    elements: tuple = ()
    cross: Optional[tuple[int, int]] = None
    note: str = ""
    rendered: tuple[str, ...] = ()

    @property
    def ring(self):
        return self.f.ring if self.f is not None else None

    def describe(self, ring=None) -> str:
        if self.f is not None:
            text = f"f = {self.f.render()}, g = {self.g.render()}"
            if self.cross is not None:
                text += f", a_{self.cross[0]} b_{self.cross[1]} != 0"
            return text
        if ring is not None:
            return ", ".join(ring.render(e) for e in self.elements)
        return ", ".join(self.rendered or map(str, self.elements))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded (or element-level) property check.

    ``outcome`` is one of ``verified_up_to`` / ``refuted`` for searches
    bounded by polynomial degree, ``holds`` / ``fails`` for degree-free
    properties.  ``verified_up_to`` only speaks for degrees <= ``bound``.
    """

    property: Property
    bound: Optional[int]
    outcome: str
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.outcome not in (VERIFIED, REFUTED, HOLDS, FAILS):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if (self.witness is not None) != (self.outcome in (REFUTED, FAILS)):
            raise ValueError("a witness accompanies exactly the refuted/fails outcomes")

    @property
    def refuted(self) -> bool:
        return self.outcome in (REFUTED, FAILS)

    @property
    def holds(self) -> bool:
        return not self.refuted

    def __str__(self):
        if self.outcome == VERIFIED:
            return f"VerifiedUpTo({self.bound})"
        if self.outcome == HOLDS:
            return "Holds"
        tag = "Refuted" if self.outcome == REFUTED else "Fails"
        return f"{tag}({self.witness.describe()})"
