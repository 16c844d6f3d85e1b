"""H-polyhedra over the rationals with exact Fourier-Motzkin elimination.

A row ``(a, strict, b)`` means ``a.x < b`` when strict and ``a.x <= b`` otherwise.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple

from ..errors import DimensionMismatch, ResourceCapError
from .vectors import Vec, q

Row = Tuple[Tuple[Fraction, ...], bool, Fraction]
DEFAULT_ROW_CAP = 10_000
_cap_override: int | None = None


@contextmanager
def row_cap_scope(cap: int):
    """Replace every row cap below this frame with ``cap`` (the CLI's configured value)."""
    global _cap_override
    old, _cap_override = _cap_override, cap
    try:
        yield
    finally:
        _cap_override = old


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _norm_row(coeffs: Sequence, strict: bool, bound) -> Row | None | str:
    """Scale so coefficients are coprime integers. None = trivially true, 'bot' = contradiction."""
    coeffs = tuple(q(c) for c in coeffs)
    bound = q(bound)
    if all(c == 0 for c in coeffs):
        ok = bound > 0 or (bound == 0 and not strict)
        return None if ok else "bot"
    den = 1
    for c in coeffs:
        den = _lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    scale = Fraction(den, g)
    return tuple(Fraction(x // g) for x in ints), bool(strict), bound * scale


def _canon(dim: int, rows: Iterable) -> Tuple[Row, ...]:
    best: dict = {}
    for coeffs, strict, bound in rows:
        r = _norm_row(coeffs, strict, bound)
        if r is None:
            continue
        if r == "bot":
            return ((tuple(Fraction(0) for _ in range(dim)), False, Fraction(-1)),)
        a, s, b = r
        old = best.get(a)
        if old is None or b < old[1] or (b == old[1] and s and not old[0]):
            best[a] = (s, b)
    # opposite rows a.x <= b and -a.x <= -b' with b < -b' is a contradiction
    for a, (s, b) in best.items():
        neg = tuple(-x for x in a)
        if neg in best:
            s2, b2 = best[neg]
            if b + b2 < 0 or (b + b2 == 0 and (s or s2)):
                return ((tuple(Fraction(0) for _ in range(dim)), False, Fraction(-1)),)
    return tuple(sorted((a, s, b) for a, (s, b) in best.items()))


@dataclass(frozen=True)
class HPolyhedron:
    dim: int
    rows: Tuple[Row, ...]

    def __post_init__(self):
        for a, _, _ in self.rows:
            if len(a) != self.dim:
                raise DimensionMismatch("row length differs from polyhedron dimension")
        object.__setattr__(self, "rows", _canon(self.dim, self.rows))

    # constructors -------------------------------------------------------
    @classmethod
    def full(cls, d: int) -> "HPolyhedron":
        return cls(d, ())

    @classmethod
    def from_box(cls, lower, upper) -> "HPolyhedron":
        d = len(lower)
        rows = []
        for i in range(d):
            e = [0] * d
            if upper[i] != float("inf"):
                e[i] = 1
                rows.append((tuple(e), False, upper[i]))
            if lower[i] != float("-inf"):
                e = [0] * d
                e[i] = -1
                rows.append((tuple(e), False, -lower[i]))
        return cls(d, tuple(rows))

    @classmethod
    def make(cls, d: int, rows) -> "HPolyhedron":
        return cls(d, tuple((tuple(a), bool(s), b) for a, s, b in rows))

    # basic ops ------------------------------------------------------------
    def is_trivially_empty(self) -> bool:
        return len(self.rows) == 1 and all(c == 0 for c in self.rows[0][0])

    def contains(self, v: Vec) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch("point length")
        for a, s, b in self.rows:
            lhs = sum((x * Fraction(y) for x, y in zip(a, v)), Fraction(0))
            if lhs > b or (s and lhs == b):
                return False
        return True

    def __contains__(self, v) -> bool:
        return self.contains(tuple(v))

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if self.dim != other.dim:
            raise DimensionMismatch("polyhedron dims differ")
        return HPolyhedron(self.dim, self.rows + other.rows)

    def lift(self, total: int, positions: Sequence[int]) -> "HPolyhedron":
        """Embed into R^total, coordinate i going to positions[i]; others free."""
        rows = []
        for a, s, b in self.rows:
            full = [Fraction(0)] * total
            for i, p in enumerate(positions):
                full[p] = a[i]
            rows.append((tuple(full), s, b))
        return HPolyhedron(total, tuple(rows))

    def swap_halves(self) -> "HPolyhedron":
        if self.dim % 2:
            raise DimensionMismatch("swap needs an even dimension")
        h = self.dim // 2
        return HPolyhedron(self.dim, tuple((a[h:] + a[:h], s, b) for a, s, b in self.rows))

    def translate(self, v: Vec) -> "HPolyhedron":
        rows = []
        for a, s, b in self.rows:
            rows.append((a, s, b + sum((x * y for x, y in zip(a, v)), Fraction(0))))
        return HPolyhedron(self.dim, tuple(rows))

    # elimination ----------------------------------------------------------
    def project(self, keep: Sequence[int], row_cap: int = DEFAULT_ROW_CAP) -> "HPolyhedron":
        keep = list(keep)
        drop = [i for i in range(self.dim) if i not in keep]
        rows = _eliminate(self.dim, list(self.rows), drop, row_cap)
        return HPolyhedron(len(keep), tuple((tuple(a[i] for i in keep), s, b) for a, s, b in rows))

    def is_empty(self, row_cap: int = DEFAULT_ROW_CAP) -> bool:
        if self.is_trivially_empty():
            return True
        rows = _eliminate(self.dim, list(self.rows), list(range(self.dim)), row_cap)
        return HPolyhedron(self.dim, tuple(rows)).is_trivially_empty()

    def subset(self, other: "HPolyhedron", row_cap: int = DEFAULT_ROW_CAP) -> bool:
        if self.dim != other.dim:
            raise DimensionMismatch("polyhedron dims differ")
        if self.is_empty(row_cap):
            return True
        for a, s, b in other.rows:
            neg = (tuple(-x for x in a), not s, -b)
            if not HPolyhedron(self.dim, self.rows + (neg,)).is_empty(row_cap):
                return False
        return True

    def disjoint(self, other: "HPolyhedron", row_cap: int = DEFAULT_ROW_CAP) -> bool:
        return self.intersect(other).is_empty(row_cap)


def _eliminate(dim: int, rows, drop, row_cap: int):
    """Fourier-Motzkin over ``drop``. Each working row carries the set of input
    rows it was combined from; after k eliminations a row combining more than
    k + 1 inputs is implied by the others and is dropped (Chernikov's rule)."""
    remaining = list(drop)
    rows = _hcanon(dim, [(a, s, b, frozenset([i])) for i, (a, s, b) in enumerate(_canon(dim, rows))])
    k = 0
    while remaining:
        if len(rows) == 1 and all(c == 0 for c in rows[0][0]):
            break
        j = _pick(rows, remaining)
        remaining.remove(j)
        if any(a[j] != 0 for a in _equalities(rows)):
            # substitution gives an equivalent system; restart the count on it
            rows = _eliminate_one(dim, rows, j, row_cap)
            rows = [(a, s, b, frozenset([i])) for i, (a, s, b, _) in enumerate(rows)]
            k = 0
            continue
        k += 1
        rows = [r for r in _eliminate_one(dim, rows, j, row_cap)
                if len(r[3]) <= k + 1 or not any(r[0])]
    return [(a, s, b) for a, s, b, _ in rows]


def _hcanon(dim: int, rows):
    """_canon for rows that carry a history set."""
    best: dict = {}
    for coeffs, strict, bound, hist in rows:
        r = _norm_row(coeffs, strict, bound)
        if r is None:
            continue
        if r == "bot":
            return [(tuple(Fraction(0) for _ in range(dim)), False, Fraction(-1), hist)]
        a, s, b = r
        old = best.get(a)
        if (old is None or b < old[1] or (b == old[1] and s and not old[0])
                or (b == old[1] and s == old[0] and len(hist) < len(old[2]))):
            best[a] = (s, b, hist)
    for a, (s, b, h) in best.items():
        neg = tuple(-x for x in a)
        if neg in best:
            s2, b2, h2 = best[neg]
            if b + b2 < 0 or (b + b2 == 0 and (s or s2)):
                return [(tuple(Fraction(0) for _ in range(dim)), False, Fraction(-1), h | h2)]
    return [(a, s, b, h) for a, (s, b, h) in sorted(best.items(), key=lambda kv: (kv[0], kv[1][0], kv[1][1]))]


def _pick(rows, cands):
    """Variable with an equality first, else the smallest pos*neg product."""
    best, key = None, None
    eqs = _equalities(rows)
    for j in cands:
        if any(a[j] != 0 for a in eqs):
            return j
        pos = sum(1 for r in rows if r[0][j] > 0)
        neg = sum(1 for r in rows if r[0][j] < 0)
        k = pos * neg - pos - neg
        if key is None or k < key:
            best, key = j, k
    return best


def _equalities(rows):
    nonstrict = {r[0]: r[2] for r in rows if not r[1]}
    return [a for a, b in nonstrict.items()
            if tuple(-x for x in a) in nonstrict and nonstrict[tuple(-x for x in a)] == -b]


def _eliminate_one(dim, rows, j, row_cap):
    for a in _equalities(rows):
        if a[j] != 0:
            na = tuple(-x for x in a)
            up = next(r for r in rows if r[0] == a and not r[1])
            dn = next(r for r in rows if r[0] == na and not r[1])
            b = up[2]
            out = []
            for a2, s2, b2, h2 in rows:
                if a2[j] == 0:
                    out.append((a2, s2, b2, h2))
                    continue
                k = a2[j] / a[j]
                # k > 0 subtracts the equality, i.e. adds its lower half
                used = dn[3] if k > 0 else up[3]
                if a2 == a or a2 == na:
                    continue
                out.append((tuple(x - k * y for x, y in zip(a2, a)), s2, b2 - k * b, h2 | used))
            return _hcanon(dim, out)
    pos = [r for r in rows if r[0][j] > 0]
    neg = [r for r in rows if r[0][j] < 0]
    out = [r for r in rows if r[0][j] == 0]
    if _cap_override is not None:
        row_cap = _cap_override
    if len(out) + len(pos) * len(neg) > row_cap:
        raise ResourceCapError(
            f"Fourier-Motzkin step needs {len(out) + len(pos) * len(neg)} rows (cap {row_cap})")
    for ap, sp, bp, hp in pos:
        kp = ap[j]
        for an, sn, bn, hn in neg:
            kn = -an[j]
            a = tuple(x / kp + y / kn for x, y in zip(ap, an))
            out.append((a, sp or sn, bp / kp + bn / kn, hp | hn))
    return _hcanon(dim, out)
