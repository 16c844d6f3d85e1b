"""Open balls and their exact containment tests.

Radii are Fractions; ``INF`` stands for the whole space and radius 0 for the
empty ball. Every test below reduces to rational sign checks, possibly of the
form a + b*sqrt(r), so no tolerance is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import DimensionMismatch
from .vectors import INF, Num, Vec, dot, q, sign_a_plus_b_sqrt, sqnorm, vadd, vsub


@dataclass(frozen=True)
class Verdict:
    """Outcome of a satisfaction check, truthy like a bool."""
    value: bool
    exact: bool = True
    eps: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return bool(self.value)

    def __and__(self, other: "Verdict") -> "Verdict":
        return Verdict(self.value and other.value, self.exact and other.exact,
                       self.eps if self.eps is not None else other.eps)


@dataclass(frozen=True)
class OpenBall:
    center: Vec
    radius: Num

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(q(x) for x in self.center))
        r = self.radius
        if not (isinstance(r, float) and r == INF):
            r = q(r)
            if r < 0:
                raise ValueError("negative radius")
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def is_empty(self) -> bool:
        return self.radius == 0

    @property
    def is_full(self) -> bool:
        return self.radius == INF

    def translate(self, v: Vec) -> "OpenBall":
        return OpenBall(vadd(self.center, v), self.radius)

    def contains(self, x: Vec) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatch("point length")
        if self.is_full:
            return True
        return sqnorm(vsub(x, self.center)) < self.radius ** 2


def _check(*balls: OpenBall):
    if len({b.dim for b in balls}) > 1:
        raise DimensionMismatch("ball dimensions differ")


def ball_subset(a: OpenBall, b: OpenBall) -> bool:
    """a ⊆ b for open balls: ||c_a - c_b|| + r_a <= r_b."""
    _check(a, b)
    if a.is_empty or b.is_full:
        return True
    if a.is_full or b.is_empty:
        return False
    gap = b.radius - a.radius
    if gap < 0:
        return False
    return sqnorm(vsub(a.center, b.center)) <= gap * gap


def balls_disjoint(a: OpenBall, b: OpenBall) -> bool:
    _check(a, b)
    if a.is_empty or b.is_empty:
        return True
    if a.is_full or b.is_full:
        return False
    s = a.radius + b.radius
    return sqnorm(vsub(a.center, b.center)) >= s * s


def _interval_lens(a1: OpenBall, a2: OpenBall, b: OpenBall) -> bool:
    lo = max(a1.center[0] - a1.radius, a2.center[0] - a2.radius)
    hi = min(a1.center[0] + a1.radius, a2.center[0] + a2.radius)
    return b.center[0] - b.radius <= lo and hi <= b.center[0] + b.radius


def lens_subset_ball(a1: OpenBall, a2: OpenBall, b: OpenBall) -> Verdict:
    """Decide a1 ∩ a2 ⊆ b by the supremum of the distance to c_b over the lens."""
    _check(a1, a2, b)
    if a1.is_empty or a2.is_empty or balls_disjoint(a1, a2) or b.is_full:
        return Verdict(True)
    if b.is_empty:
        return Verdict(False)
    if a1.is_full or a2.is_full:
        if a1.is_full and a2.is_full:
            return Verdict(False)
        return Verdict(ball_subset(a2 if a1.is_full else a1, b))
    if ball_subset(a1, a2):
        return Verdict(ball_subset(a1, b))
    if ball_subset(a2, a1):
        return Verdict(ball_subset(a2, b))
    if a1.dim == 1:
        return Verdict(_interval_lens(a1, a2, b))

    # genuine lens: the two spheres meet in a rim of positive radius
    c1, c2, cb = a1.center, a2.center, b.center
    r1, r2, rb = a1.radius, a2.radius, b.radius
    n = vsub(c2, c1)
    D2 = sqnorm(n)
    t1 = (r1 * r1 + D2 - r2 * r2) / 2
    t2 = (r2 * r2 + D2 - r1 * r1) / 2

    # farthest point of each sphere from c_b, when it lies on the lens boundary
    for c, r, t, toward in ((c1, r1, t1, n), (c2, r2, t2, vsub(c1, c2))):
        u = vsub(c, cb)
        L2 = sqnorm(u)
        if L2 == 0:
            continue
        if sign_a_plus_b_sqrt(r * dot(u, toward), -t, L2) >= 0:
            gap = rb - r
            if gap < 0 or L2 > gap * gap:
                return Verdict(False)

    # rim sphere: centre m, radius h, lying in the hyperplane normal to n
    k = t1 / D2
    m = tuple(x + k * y for x, y in zip(c1, n))
    h2 = r1 * r1 - k * k * D2
    w = vsub(cb, m)
    wn = dot(w, n)
    q_perp = sqnorm(w) - wn * wn / D2
    a = rb * rb - sqnorm(w) - h2
    return Verdict(sign_a_plus_b_sqrt(a, Fraction(-2), h2 * q_perp) >= 0)
