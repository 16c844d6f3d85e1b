"""Axis-aligned cones X1 x ... x Xd with Xi in {R, R+, R-, {0}}.

Components are written as one character each: 'R' (whole line), '+', '-', '0'.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch

_POLAR = {"R": "0", "0": "R", "+": "-", "-": "+"}
_LEQ = {("0", "0"), ("0", "+"), ("0", "-"), ("0", "R"), ("+", "+"), ("+", "R"),
        ("-", "-"), ("-", "R"), ("R", "R")}


def _meet1(a: str, b: str) -> str:
    if a == b:
        return a
    if a == "R":
        return b
    if b == "R":
        return a
    return "0"


def _join1(a: str, b: str) -> str:
    if a == b:
        return a
    if a == "0":
        return b
    if b == "0":
        return a
    return "R"


@dataclass(frozen=True)
class AlCone:
    comps: str

    def __post_init__(self):
        if any(c not in _POLAR for c in self.comps):
            raise ValueError(f"bad al-cone components {self.comps!r}")

    @property
    def dim(self) -> int:
        return len(self.comps)

    @classmethod
    def full(cls, d: int) -> "AlCone":
        return cls("R" * d)

    @classmethod
    def zero(cls, d: int) -> "AlCone":
        return cls("0" * d)

    def _check(self, other: "AlCone"):
        if self.dim != other.dim:
            raise DimensionMismatch("al-cone dims differ")

    def polar(self) -> "AlCone":
        return AlCone("".join(_POLAR[c] for c in self.comps))

    def meet(self, other: "AlCone") -> "AlCone":
        self._check(other)
        return AlCone("".join(_meet1(a, b) for a, b in zip(self.comps, other.comps)))

    def join(self, other: "AlCone") -> "AlCone":
        """Least al-cone containing both (convex hull of the union)."""
        self._check(other)
        return AlCone("".join(_join1(a, b) for a, b in zip(self.comps, other.comps)))

    def leq(self, other: "AlCone") -> bool:
        self._check(other)
        return all((a, b) in _LEQ for a, b in zip(self.comps, other.comps))

    def contains(self, v) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch("point length")
        for c, x in zip(self.comps, v):
            x = Fraction(x)
            if (c == "0" and x != 0) or (c == "+" and x < 0) or (c == "-" and x > 0):
                return False
        return True
