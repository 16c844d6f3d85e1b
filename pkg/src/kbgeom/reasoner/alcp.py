"""Propositional ALC: brute force over all valuations of the concept names."""
from __future__ import annotations

from typing import Dict, List

import numpy as np

from ..errors import LanguageError, ResourceCapError
from ..kb.syntax import (
    And, Bot, ConceptAssertion, KnowledgeBase, Name, Not, Or, RoleAssertion, SubClass, Top,
)

ALCP_NAME_CAP = 20


def _valuations(n: int) -> np.ndarray:
    """Row v, column i: truth of concept i under valuation v (bit i of v)."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(bool)


def eval_concept(c, names: List[str], vals: np.ndarray) -> np.ndarray:
    if isinstance(c, Top):
        return np.ones(len(vals), dtype=bool)
    if isinstance(c, Bot):
        return np.zeros(len(vals), dtype=bool)
    if isinstance(c, Name):
        return vals[:, names.index(c.name)]
    if isinstance(c, Not):
        return ~eval_concept(c.arg, names, vals)
    if isinstance(c, And):
        return eval_concept(c.left, names, vals) & eval_concept(c.right, names, vals)
    if isinstance(c, Or):
        return eval_concept(c.left, names, vals) | eval_concept(c.right, names, vals)
    raise LanguageError(f"{c} is not a propositional concept")


class AlcpState:
    def __init__(self, kb: KnowledgeBase, cap: int = ALCP_NAME_CAP):
        names = list(kb.signature.concepts)
        if len(names) > cap:
            raise ResourceCapError(f"{len(names)} concept names exceed the ALC_p cap of {cap}")
        self.names = names
        self.vals = _valuations(len(names))
        ok = np.ones(len(self.vals), dtype=bool)
        for ax in kb.tbox:
            if not isinstance(ax, SubClass):
                raise LanguageError(f"ALC_p TBox holds concept inclusions only, got {ax}")
            ok &= ~eval_concept(ax.lhs, names, self.vals) | eval_concept(ax.rhs, names, self.vals)
        self.admissible = ok
        self.per_ind: Dict[str, np.ndarray] = {a: ok.copy() for a in kb.signature.individuals}
        self.role_facts = set()
        for ax in kb.abox:
            if isinstance(ax, ConceptAssertion):
                self.per_ind.setdefault(ax.ind, ok.copy())
                self.per_ind[ax.ind] &= eval_concept(ax.concept, names, self.vals)
            elif isinstance(ax, RoleAssertion):
                self.role_facts.add((ax.role, ax.a, ax.b))
                self.per_ind.setdefault(ax.a, ok.copy())
                self.per_ind.setdefault(ax.b, ok.copy())

    def consistent(self) -> bool:
        if not self.admissible.any():
            return False
        return all(m.any() for m in self.per_ind.values())

    def entails(self, ax) -> bool:
        if not self.consistent():
            return True
        if isinstance(ax, SubClass):
            l = eval_concept(ax.lhs, self.names, self.vals)
            r = eval_concept(ax.rhs, self.names, self.vals)
            return not (self.admissible & l & ~r).any()
        if isinstance(ax, ConceptAssertion):
            m = self.per_ind.get(ax.ind, self.admissible)
            return not (m & ~eval_concept(ax.concept, self.names, self.vals)).any()
        if isinstance(ax, RoleAssertion):
            return (ax.role, ax.a, ax.b) in self.role_facts
        raise LanguageError(f"{ax} is not an ALC_p axiom")


def alcp_consistent(kb: KnowledgeBase, cap: int = ALCP_NAME_CAP) -> bool:
    return AlcpState(kb, cap).consistent()


def alcp_entails(kb: KnowledgeBase, ax, cap: int = ALCP_NAME_CAP) -> bool:
    return AlcpState(_with_sig(kb, ax), cap).entails(ax)


def _with_sig(kb: KnowledgeBase, ax) -> KnowledgeBase:
    from ..kb.syntax import symbols
    c, r, i = symbols(ax)
    return KnowledgeBase(kb.signature.extend(c, r, i), kb.tbox, kb.abox, kb.language)
