"""Diagonal affine maps x -> D x + b with non-negative D."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ..errors import DimensionMismatch
from .boxes import Box
from .vectors import INF, Vec, q


@dataclass(frozen=True)
class AffineDiagMap:
    diag: Tuple[Fraction, ...]
    offset: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.diag) != len(self.offset):
            raise DimensionMismatch("diag/offset length")
        object.__setattr__(self, "diag", tuple(q(x) for x in self.diag))
        object.__setattr__(self, "offset", tuple(q(x) for x in self.offset))
        if any(x < 0 for x in self.diag):
            raise ValueError("diagonal entries must be non-negative")

    @property
    def dim(self) -> int:
        return len(self.diag)

    @classmethod
    def translation(cls, v: Vec) -> "AffineDiagMap":
        return cls(tuple(Fraction(1) for _ in v), tuple(v))

    def apply(self, x: Vec) -> Vec:
        if len(x) != self.dim:
            raise DimensionMismatch("point length")
        return tuple(d * Fraction(xi) + b for d, xi, b in zip(self.diag, x, self.offset))

    def image_box(self, box: Box) -> Box:
        if box.dim != self.dim:
            raise DimensionMismatch("box dim")
        if box.is_empty():
            return box
        lo, hi = [], []
        for d, b, l, u in zip(self.diag, self.offset, box.lower, box.upper):
            if d == 0:
                lo.append(b)
                hi.append(b)
            else:
                lo.append(l if l == -INF else d * l + b)
                hi.append(u if u == INF else d * u + b)
        return Box(tuple(lo), tuple(hi))

    def preimage_box(self, box: Box) -> Box:
        """{x : D x + b in box}; always a (possibly empty or unbounded) box."""
        if box.dim != self.dim:
            raise DimensionMismatch("box dim")
        if box.is_empty():
            return Box.empty(self.dim)
        lo, hi = [], []
        for d, b, l, u in zip(self.diag, self.offset, box.lower, box.upper):
            if d == 0:
                if l <= b <= u:
                    lo.append(-INF)
                    hi.append(INF)
                else:
                    return Box.empty(self.dim)
            else:
                lo.append(l if l == -INF else (l - b) / d)
                hi.append(u if u == INF else (u - b) / d)
        return Box(tuple(lo), tuple(hi))
