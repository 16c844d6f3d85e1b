"""Finite interpretations and classical satisfaction by structural recursion."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Tuple

from ..errors import PreconditionError
from .syntax import (
    And, Bot, Comp, ConceptAssertion, Exists, Forall, Inv, Name, NegRole, Nominal, Not, Or,
    Pattern, RName, RoleAnd, RoleAssertion, RoleEquiv, SubClass, SubRole, Top, pattern_to_dl,
)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class FiniteInterpretation:
    domain: Tuple[int, ...]
    concept_ext: Mapping[str, FrozenSet[int]] = field(default_factory=dict)
    role_ext: Mapping[str, FrozenSet[Pair]] = field(default_factory=dict)
    ind_map: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise PreconditionError("interpretation domain must be non-empty")
        dom = set(self.domain)
        for k, v in self.concept_ext.items():
            if not set(v) <= dom:
                raise PreconditionError(f"extension of {k} leaves the domain")
        for k, v in self.role_ext.items():
            if any(x not in dom or y not in dom for x, y in v):
                raise PreconditionError(f"extension of {k} leaves the domain")
        if any(e not in dom for e in self.ind_map.values()):
            raise PreconditionError("individual mapped outside the domain")

    def ind(self, a: str) -> int:
        if a not in self.ind_map:
            raise PreconditionError(f"individual {a} is not interpreted")
        return self.ind_map[a]

    def concept(self, c) -> FrozenSet[int]:
        if isinstance(c, Top):
            return frozenset(self.domain)
        if isinstance(c, Bot):
            return frozenset()
        if isinstance(c, Name):
            return frozenset(self.concept_ext.get(c.name, ()))
        if isinstance(c, Nominal):
            return frozenset({self.ind(c.ind)})
        if isinstance(c, Not):
            return frozenset(self.domain) - self.concept(c.arg)
        if isinstance(c, And):
            return self.concept(c.left) & self.concept(c.right)
        if isinstance(c, Or):
            return self.concept(c.left) | self.concept(c.right)
        if isinstance(c, Exists):
            f, r = self.concept(c.filler), self.role(c.role)
            return frozenset(x for x, y in r if y in f)
        if isinstance(c, Forall):
            f, r = self.concept(c.filler), self.role(c.role)
            bad = {x for x, y in r if y not in f}
            return frozenset(self.domain) - bad
        raise TypeError(f"unknown concept {c!r}")

    def role(self, r) -> FrozenSet[Pair]:
        if isinstance(r, RName):
            return frozenset(self.role_ext.get(r.name, ()))
        if isinstance(r, Inv):
            return frozenset((y, x) for x, y in self.role(r.role))
        if isinstance(r, Comp):
            a, b = self.role(r.first), self.role(r.second)
            succ: Dict[int, set] = {}
            for y, z in b:
                succ.setdefault(y, set()).add(z)
            return frozenset((x, z) for x, y in a for z in succ.get(y, ()))
        if isinstance(r, RoleAnd):
            return self.role(r.left) & self.role(r.right)
        if isinstance(r, NegRole):
            full = {(x, y) for x in self.domain for y in self.domain}
            return frozenset(full - self.role(r.role))
        raise TypeError(f"unknown role {r!r}")


def classical_satisfies(i: FiniteInterpretation, ax) -> bool:
    if isinstance(ax, SubClass):
        return i.concept(ax.lhs) <= i.concept(ax.rhs)
    if isinstance(ax, SubRole):
        return i.role(ax.sub) <= i.role(ax.sup)
    if isinstance(ax, RoleEquiv):
        return i.role(ax.left) == i.role(ax.right)
    if isinstance(ax, ConceptAssertion):
        return i.ind(ax.ind) in i.concept(ax.concept)
    if isinstance(ax, RoleAssertion):
        return (i.ind(ax.a), i.ind(ax.b)) in i.role(RName(ax.role))
    if isinstance(ax, Pattern):
        return classical_satisfies(i, pattern_to_dl(ax))
    raise TypeError(f"unknown axiom {ax!r}")


def is_classical_model(i: FiniteInterpretation, axioms) -> bool:
    return all(classical_satisfies(i, ax) for ax in axioms)
