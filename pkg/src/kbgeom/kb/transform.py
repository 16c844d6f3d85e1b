"""ABox-to-TBox encoding via nominals."""
from __future__ import annotations

from ..errors import PreconditionError
from .language import NOMINAL_TAGS
from .syntax import (
    ConceptAssertion, Exists, KnowledgeBase, Name, Nominal, RName, RoleAssertion, SubClass,
)


def assertion_to_nominal(ax):
    if isinstance(ax, ConceptAssertion):
        if not isinstance(ax.concept, Name):
            raise PreconditionError(f"only named concept assertions encode as nominals: {ax}")
        return SubClass(Nominal(ax.ind), ax.concept, from_assertion=True)
    if isinstance(ax, RoleAssertion):
        return SubClass(Nominal(ax.a), Exists(RName(ax.role), Nominal(ax.b)), from_assertion=True)
    return ax


def abox_to_tbox(kb: KnowledgeBase) -> KnowledgeBase:
    if kb.language not in NOMINAL_TAGS:
        raise PreconditionError(f"language {kb.language} has no nominals")
    if not kb.abox:
        return kb
    tb = kb.tbox + tuple(assertion_to_nominal(a) for a in kb.abox)
    return KnowledgeBase(kb.signature, tb, (), kb.language)
