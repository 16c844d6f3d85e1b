"""Random inputs shared by the unit and acceptance tests."""
from __future__ import annotations

import random
from typing import List

from kbgeom.kb import Signature, enumerate_language
from kbgeom.kb.syntax import ConceptAssertion, KnowledgeBase, RoleAssertion

ELO_SIG = Signature(("A", "B", "C"), ("r",), ("a", "b"))
ELO_LANGUAGE = list(enumerate_language(ELO_SIG, "ELO-bot-nf"))


def split(sig: Signature, axioms, tag: str) -> KnowledgeBase:
    tb = tuple(a for a in axioms if not isinstance(a, (ConceptAssertion, RoleAssertion)))
    ab = tuple(a for a in axioms if isinstance(a, (ConceptAssertion, RoleAssertion)))
    return KnowledgeBase(sig, tb, ab, tag)


def random_elo_kb(rng: random.Random, max_axioms: int = 5) -> KnowledgeBase:
    """Random ELO⊥ normal-form KB over 3 concept names, 1 role and 2 individuals."""
    k = rng.randint(1, max_axioms)
    return split(ELO_SIG, rng.sample(ELO_LANGUAGE, k), "ELO-bot-nf")


def random_query(rng: random.Random):
    return rng.choice(ELO_LANGUAGE)


def subsets(items: List) -> List[List]:
    out = []
    for mask in range(1 << len(items)):
        out.append([x for i, x in enumerate(items) if mask >> i & 1])
    return out
