"""Exact rational vectors as plain tuples of Fraction."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Tuple, Union

from ..errors import DimensionMismatch

INF = float("inf")
Vec = Tuple[Fraction, ...]
Num = Union[Fraction, float]


def q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if x != x or x in (INF, -INF):
            raise ValueError("not a finite rational")
        return Fraction(x)
    return Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(q(x) for x in xs)


def _same(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension {len(a)} vs {len(b)}")


def vadd(a: Vec, b: Vec) -> Vec:
    _same(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    _same(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def concat(a: Vec, b: Vec) -> Vec:
    return tuple(a) + tuple(b)


def dot(a: Vec, b: Vec) -> Fraction:
    _same(a, b)
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sqnorm(a: Vec) -> Fraction:
    return dot(a, a)


def fmt_q(x: Num) -> str:
    """Serialize a rational (or +-inf) as 'p/q', 'p' or 'inf'."""
    if isinstance(x, float):
        if x == INF:
            return "inf"
        if x == -INF:
            return "-inf"
        x = Fraction(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_q(s) -> Num:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        return s if s in (INF, -INF) else Fraction(s)
    s = str(s).strip()
    if s in ("inf", "+inf"):
        return INF
    if s == "-inf":
        return -INF
    return Fraction(s)


def sign_a_plus_b_sqrt(a: Fraction, b: Fraction, r: Fraction) -> int:
    """Exact sign of a + b*sqrt(r) for r >= 0."""
    if r == 0 or b == 0:
        return (a > 0) - (a < 0)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 r
    lhs, rhs = a * a, b * b * r
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def cmp_sqrt(r: Fraction, t: Fraction) -> int:
    """Sign of sqrt(r) - t, exactly."""
    return sign_a_plus_b_sqrt(-t, Fraction(1), r)
