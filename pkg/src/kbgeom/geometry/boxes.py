"""Closed axis-aligned boxes with possibly infinite corners."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ..errors import DimensionMismatch
from .vectors import INF, Num, Vec, q


def _num(x) -> Num:
    if isinstance(x, float) and x in (INF, -INF):
        return x
    return q(x)


@dataclass(frozen=True)
class Box:
    lower: Tuple[Num, ...]
    upper: Tuple[Num, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise DimensionMismatch("box corners differ in length")
        object.__setattr__(self, "lower", tuple(_num(x) for x in self.lower))
        object.__setattr__(self, "upper", tuple(_num(x) for x in self.upper))

    @property
    def dim(self) -> int:
        return len(self.lower)

    @classmethod
    def full(cls, d: int) -> "Box":
        return cls((-INF,) * d, (INF,) * d)

    @classmethod
    def empty(cls, d: int) -> "Box":
        return cls((Fraction(1),) * d, (Fraction(0),) * d)

    @classmethod
    def point(cls, v: Vec) -> "Box":
        return cls(tuple(v), tuple(v))

    @classmethod
    def from_center(cls, center: Vec, offset) -> "Box":
        """ELBE view: {v : |v - center| <= offset}; offset entries may be inf."""
        lo = tuple(-INF if o == INF else c - o for c, o in zip(center, offset))
        hi = tuple(INF if o == INF else c + o for c, o in zip(center, offset))
        return cls(lo, hi)

    def is_empty(self) -> bool:
        return any(l > u for l, u in zip(self.lower, self.upper))

    @property
    def center(self):
        out = []
        for l, u in zip(self.lower, self.upper):
            if l in (INF, -INF) or u in (INF, -INF):
                out.append(Fraction(0) if (l == -INF and u == INF) else (l if u == INF else u))
            else:
                out.append((l + u) / 2)
        return tuple(out)

    @property
    def offset(self):
        out = []
        for l, u in zip(self.lower, self.upper):
            if l == -INF or u == INF:
                out.append(INF)
            else:
                out.append((u - l) / 2)
        return tuple(out)

    def _check(self, other: "Box"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"box dims {self.dim} vs {other.dim}")

    def subset(self, other: "Box") -> bool:
        self._check(other)
        if self.is_empty():
            return True
        return all(l2 <= l1 and u1 <= u2
                   for l1, u1, l2, u2 in zip(self.lower, self.upper, other.lower, other.upper))

    def intersect(self, other: "Box") -> "Box":
        self._check(other)
        return Box(tuple(max(a, b) for a, b in zip(self.lower, other.lower)),
                   tuple(min(a, b) for a, b in zip(self.upper, other.upper)))

    def disjoint(self, other: "Box") -> bool:
        return self.intersect(other).is_empty()

    def hull(self, other: "Box") -> "Box":
        """Smallest box containing both."""
        self._check(other)
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        return Box(tuple(min(a, b) for a, b in zip(self.lower, other.lower)),
                   tuple(max(a, b) for a, b in zip(self.upper, other.upper)))

    def translate(self, v: Vec) -> "Box":
        if len(v) != self.dim:
            raise DimensionMismatch("translation vector length")
        if self.is_empty():
            return self
        return Box(tuple(l + x for l, x in zip(self.lower, v)),
                   tuple(u + x for u, x in zip(self.upper, v)))

    def contains(self, v: Vec) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch("point length")
        return all(l <= x <= u for l, x, u in zip(self.lower, v, self.upper))

    def __contains__(self, v) -> bool:
        return self.contains(tuple(v))
