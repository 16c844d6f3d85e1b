"""Products of 2-D convex slices, one slice per coordinate pair (x_j, y_j).

A point of the 2d-dimensional space is x ⊕ y with x, y in R^d; slice j
constrains the pair (x_j, y_j) only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..errors import DimensionMismatch
from .polyhedra import DEFAULT_ROW_CAP, HPolyhedron
from .vectors import q


def band_slice(slope, center, width) -> HPolyhedron:
    """{(x, y) : |x - slope*y - center| <= width}."""
    s, c, w = q(slope), q(center), q(width)
    return HPolyhedron.make(2, [((1, -s), False, c + w), ((-1, s), False, w - c)])


@dataclass(frozen=True)
class BandStack:
    slices: Tuple[HPolyhedron, ...]
    params: Optional[Tuple[tuple, tuple, tuple]] = None  # (slope, center, width) when built from bands

    def __post_init__(self):
        for s in self.slices:
            if s.dim != 2:
                raise DimensionMismatch("band slices must be 2-D")

    @property
    def dim(self) -> int:
        return len(self.slices)

    @classmethod
    def from_bands(cls, slope, center, width) -> "BandStack":
        if not len(slope) == len(center) == len(width):
            raise DimensionMismatch("band parameter lengths differ")
        sl = tuple(band_slice(s, c, w) for s, c, w in zip(slope, center, width))
        return cls(sl, (tuple(map(q, slope)), tuple(map(q, center)), tuple(map(q, width))))

    @classmethod
    def full(cls, d: int) -> "BandStack":
        return cls(tuple(HPolyhedron.full(2) for _ in range(d)))

    def _check(self, other: "BandStack"):
        if self.dim != other.dim:
            raise DimensionMismatch("band stack dims differ")

    def contains(self, x, y) -> bool:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("point length")
        return all(s.contains((Fraction(a), Fraction(b))) for s, a, b in zip(self.slices, x, y))

    def is_empty(self, row_cap: int = DEFAULT_ROW_CAP) -> bool:
        return any(s.is_empty(row_cap) for s in self.slices)

    def mirror(self) -> "BandStack":
        return BandStack(tuple(s.swap_halves() for s in self.slices))

    def subset(self, other: "BandStack", row_cap: int = DEFAULT_ROW_CAP) -> bool:
        self._check(other)
        if self.is_empty(row_cap):
            return True
        return all(a.subset(b, row_cap) for a, b in zip(self.slices, other.slices))

    def intersect(self, other: "BandStack") -> "BandStack":
        self._check(other)
        return BandStack(tuple(a.intersect(b) for a, b in zip(self.slices, other.slices)))

    def disjoint(self, other: "BandStack", row_cap: int = DEFAULT_ROW_CAP) -> bool:
        self._check(other)
        if self.is_empty(row_cap) or other.is_empty(row_cap):
            return True
        return any(a.disjoint(b, row_cap) for a, b in zip(self.slices, other.slices))

    def compose(self, other: "BandStack", row_cap: int = DEFAULT_ROW_CAP) -> "BandStack":
        """Slice-wise {(u, w) : (u, v) in self_j and (v, w) in other_j for some v}."""
        self._check(other)
        out = []
        for a, b in zip(self.slices, other.slices):
            joint = a.lift(3, (0, 1)).intersect(b.lift(3, (1, 2)))
            out.append(joint.project((0, 2), row_cap))
        return BandStack(tuple(out))

    def to_polyhedron(self) -> HPolyhedron:
        d = self.dim
        p = HPolyhedron.full(2 * d)
        for j, s in enumerate(self.slices):
            p = p.intersect(s.lift(2 * d, (j, d + j)))
        return p
