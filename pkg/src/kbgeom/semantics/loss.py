"""The ELEm training loss, evaluated in rational arithmetic.

Terms follow the published ELEm loss with a margin ``gamma``; every centre
that appears in a term also contributes the unit-sphere regulariser
|‖c‖ - 1|. The second subterm of the A1 ⊓ A2 ⊑ B loss uses ρ(A2).

Norms are exact when the squared norm is a perfect rational square (the
usual case for hand-built embeddings); otherwise a 40-digit rational
approximation is used and ``loss_is_exact`` reports False.
"""
from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt
from typing import Tuple

from ..errors import PreconditionError
from ..geometry import sqnorm, vadd, vsub
from ..kb.language import nf_shape
from ..kb.syntax import Bot, Exists, Name, Nominal, Top
from ..kb.transform import assertion_to_nominal
from .embedding import Embedding


def _sqrt(x: Fraction) -> Tuple[Fraction, bool]:
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd), True
    with localcontext() as ctx:
        ctx.prec = 40
        return Fraction(Decimal(n).sqrt() / Decimal(d).sqrt()), False


class _Acc:
    def __init__(self):
        self.total = Fraction(0)
        self.exact = True

    def norm(self, v) -> Fraction:
        r, ok = _sqrt(sqnorm(v))
        self.exact = self.exact and ok
        return r

    def hinge(self, x: Fraction) -> None:
        self.total += max(Fraction(0), x)

    def unit(self, c) -> None:
        self.total += abs(self.norm(c) - 1)


def _named(e: Embedding, c):
    if isinstance(c, Name):
        return e.concept(c.name)
    if isinstance(c, Nominal):
        return e.ind(c.ind)
    raise PreconditionError(f"the ELEm loss has no term for {c} in this position")


def _term(e: Embedding, ax, g: Fraction, acc: _Acc) -> None:
    shape = nf_shape(ax, inverses=False)
    l, r = ax.lhs, ax.rhs
    if isinstance(r, Top) or isinstance(l, Bot):
        return
    if isinstance(r, Bot):
        if shape == "sub":
            acc.total += _named(e, l).radius
        elif shape == "exl":
            acc.total += _named(e, l.filler).radius
        else:
            b1, b2 = _named(e, l.left), _named(e, l.right)
            acc.hinge(b1.radius + b2.radius - acc.norm(vsub(b1.center, b2.center)) + g)
            acc.unit(b1.center)
            acc.unit(b2.center)
        return
    if shape == "sub":
        c, d = _named(e, l), _named(e, r)
        acc.hinge(acc.norm(vsub(c.center, d.center)) + c.radius - d.radius - g)
        acc.unit(c.center)
        acc.unit(d.center)
    elif shape == "conj":
        c1, c2, d = _named(e, l.left), _named(e, l.right), _named(e, r)
        acc.hinge(acc.norm(vsub(c1.center, c2.center)) - c1.radius - c2.radius - g)
        acc.hinge(acc.norm(vsub(c1.center, d.center)) - c1.radius - g)
        acc.hinge(acc.norm(vsub(c2.center, d.center)) - c2.radius - g)
        acc.hinge(min(c1.radius, c2.radius) - d.radius - g)
        for b in (c1, c2, d):
            acc.unit(b.center)
    elif shape == "exr":
        c, d = _named(e, l), _named(e, r.filler)
        v = e.role(r.role.name)
        acc.hinge(acc.norm(vsub(vadd(c.center, v), d.center)) + c.radius - d.radius - g)
        acc.unit(c.center)
        acc.unit(d.center)
    else:  # exl
        c, d = _named(e, l.filler), _named(e, r)
        v = e.role(l.role.name)
        acc.hinge(acc.norm(vsub(vsub(c.center, v), d.center)) - c.radius - d.radius - g)
        acc.unit(c.center)
        acc.unit(d.center)


def _run(e: Embedding, kb, gamma) -> _Acc:
    if e.method not in ("elem", "emel"):
        raise PreconditionError(f"elem_loss needs an elem embedding, got {e.method}")
    acc = _Acc()
    g = Fraction(gamma)
    for ax in kb.axioms:
        ax = assertion_to_nominal(ax)
        if not hasattr(ax, "lhs"):
            continue  # role axioms carry no ELEm loss
        if nf_shape(ax, inverses=False) is None or isinstance(ax.rhs, Exists) and isinstance(ax.rhs.filler, (Top, Bot)):
            raise PreconditionError(f"the ELEm loss has no term for {ax}")
        _term(e, ax, g, acc)
    return acc


def elem_loss(e: Embedding, kb, gamma) -> Fraction:
    """Sum of the ELEm loss terms of every axiom of ``kb`` under margin ``gamma``."""
    return _run(e, kb, gamma).total


def loss_is_exact(e: Embedding, kb, gamma) -> bool:
    return _run(e, kb, gamma).exact
