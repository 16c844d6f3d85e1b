"""Classical reasoning, dispatched on the KB's language tag."""
from __future__ import annotations

from ..kb.language import NOMINAL_TAGS, PATTERN_TAGS
from ..kb.syntax import KnowledgeBase
from .alcp import alcp_consistent, alcp_entails
from .el import el_consistent, el_entails
from .finite import bounded_consistent, bounded_entails, finite_model_search
from .horn import horn_consistent, horn_entails, horn_model
from .patterns import pattern_chase, pattern_consistent, pattern_entails, pattern_kb_entails


def consistent(kb: KnowledgeBase) -> bool:
    if kb.language in NOMINAL_TAGS:
        return el_consistent(kb)
    if kb.language == "ELHI-bot-nf":
        return horn_consistent(kb)
    if kb.language in PATTERN_TAGS:
        return pattern_consistent(kb)
    return alcp_consistent(kb)


def entails(kb: KnowledgeBase, ax) -> bool:
    if kb.language in NOMINAL_TAGS:
        return el_entails(kb, ax)
    if kb.language == "ELHI-bot-nf":
        return horn_entails(kb, ax)
    if kb.language in PATTERN_TAGS:
        return pattern_kb_entails(kb, ax)
    return alcp_entails(kb, ax)


def consistent_with(kb: KnowledgeBase, ax) -> bool:
    return consistent(kb.with_axioms((ax,)))


__all__ = [
    "consistent", "entails", "consistent_with", "el_consistent", "el_entails", "horn_consistent",
    "horn_entails", "horn_model", "alcp_consistent", "alcp_entails", "pattern_chase",
    "pattern_entails", "pattern_kb_entails", "finite_model_search", "bounded_consistent",
    "bounded_entails",
]
