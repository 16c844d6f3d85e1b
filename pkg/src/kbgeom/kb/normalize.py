"""Normalization of EL-family TBoxes into the four normal shapes."""
from __future__ import annotations

from typing import List

from ..errors import UnsupportedFragment
from .language import nf_shape
from .syntax import (
    And, Bot, Exists, Forall, Name, Nominal, Not, Or, SubClass, Top,
)

_ATOM = (Top, Bot, Name, Nominal)


class _Fresh:
    def __init__(self, taken):
        self.n = 0
        self.taken = set(taken)

    def __call__(self) -> Name:
        while f"X{self.n}" in self.taken:
            self.n += 1
        name = f"X{self.n}"
        self.taken.add(name)
        self.n += 1
        return Name(name)


def _check_el(c):
    if isinstance(c, (Not, Or, Forall)):
        raise UnsupportedFragment(f"normalize handles EL concepts only, found {c}")
    if isinstance(c, And):
        _check_el(c.left)
        _check_el(c.right)
    elif isinstance(c, Exists):
        _check_el(c.filler)


def normalize(tbox, taken=()) -> List:
    """Rewrite EL inclusions into normal shapes, introducing X0, X1, ... as needed.

    Role axioms, assertions and patterns pass through unchanged. ``taken`` lists
    names the fresh names must avoid.
    """
    fresh = _Fresh(taken)
    out: List = []
    for ax in tbox:
        if not isinstance(ax, SubClass):
            out.append(ax)
            continue
        _check_el(ax.lhs)
        _check_el(ax.rhs)
        _norm(ax.lhs, ax.rhs, fresh, out)
    return out


def _atomize_left(c, fresh, out):
    """Atom X with c ⊑ X available (definitions emitted first)."""
    if isinstance(c, _ATOM):
        return c
    x = fresh()
    _norm(c, x, fresh, out)
    return x


def _norm(lhs, rhs, fresh, out):
    if isinstance(lhs, Bot) or isinstance(rhs, Top):
        return
    if isinstance(rhs, And):
        if not isinstance(lhs, _ATOM):
            x = fresh()
            _norm(lhs, x, fresh, out)
            lhs = x
        _norm(lhs, rhs.left, fresh, out)
        _norm(lhs, rhs.right, fresh, out)
        return
    # left side
    if isinstance(lhs, And):
        if isinstance(lhs.left, Top):
            return _norm(lhs.right, rhs, fresh, out)
        if isinstance(lhs.right, Top):
            return _norm(lhs.left, rhs, fresh, out)
        a1 = _atomize_left(lhs.left, fresh, out)
        a2 = _atomize_left(lhs.right, fresh, out)
        new_lhs = And(a1, a2)
    elif isinstance(lhs, Exists):
        new_lhs = Exists(lhs.role, _atomize_left(lhs.filler, fresh, out))
    else:
        new_lhs = lhs
    # right side
    if isinstance(rhs, _ATOM):
        out.append(SubClass(new_lhs, rhs))
        return
    if not isinstance(new_lhs, _ATOM):
        x = fresh()
        out.append(SubClass(new_lhs, x))
        new_lhs = x
    if isinstance(rhs, Exists):
        if isinstance(rhs.filler, _ATOM):
            out.append(SubClass(new_lhs, rhs))
            return
        y = fresh()
        out.append(SubClass(new_lhs, Exists(rhs.role, y)))
        _norm(y, rhs.filler, fresh, out)
        return
    raise UnsupportedFragment(f"cannot normalize right-hand side {rhs}")


def is_normal(ax) -> bool:
    if isinstance(ax, SubClass):
        return nf_shape(ax) is not None
    return True
