import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbgeom.kb import Signature, enumerate_language, parse_kb, classical_satisfies
from kbgeom.kb.syntax import (
    BOT, And, ConceptAssertion, KnowledgeBase, Name, Not, Or, Pattern, RName, SubClass,
)
from kbgeom.reasoner import (
    alcp_consistent, alcp_entails, bounded_entails, consistent, el_consistent, el_entails, finite_model_search,
    pattern_chase, pattern_entails,
)
from kbgeom.reasoner.patterns import chase, rules_of
from kbgeom.gallery.cases import load_kb

import generators as gen
from oracles import pattern_truth_table

A, B, C, D = Name("A"), Name("B"), Name("C"), Name("D")
r = RName("r")


# ---------------------------------------------------------------- EL

def test_el_examples():
    assert not el_consistent(load_kb("example1"))
    kb = parse_kb("SubClassOf(Exists(r C) A)\nSubClassOf(Exists(r D) B)\nSubClassOf(And(A B) Bot)")
    assert not el_entails(kb, SubClass(And(C, D), BOT))
    kb = parse_kb("SubClassOf(A B)\nSubClassOf(B C)")
    assert el_entails(kb, SubClass(A, C))
    assert not el_entails(kb, SubClass(C, A))


def test_el_nominal_interaction():
    # every r-successor is a, so anything with an r-edge into C forces C(a)
    kb = parse_kb("Language: ELO-bot-nf\nIndividuals: a\n"
                  "SubClassOf(Exists(r C) A)\nSubClassOf(Exists(r Top) Nominal(a))\nSubClassOf(Top Exists(r Nominal(a)))")
    assert el_entails(kb, SubClass(And(B, C), A))
    assert bounded_entails(kb, SubClass(And(B, C), A), 3)


def test_el_agrees_with_finite_models():
    rng = random.Random(11)
    hits = 0
    for _ in range(300):
        kb, q = gen.random_elo_kb(rng), gen.random_query(rng)
        got = el_entails(kb, q)
        assert got == bounded_entails(kb, q, 3), (kb, q)
        hits += got
    assert 0 < hits < 300


# ---------------------------------------------------------------- ALCp

def test_alcp_examples():
    assert alcp_consistent(parse_kb("Language: ALCp\nSubClassOf(A Not(A))"))
    assert not alcp_consistent(parse_kb("Language: ALCp\nSubClassOf(Top A)\nSubClassOf(Top Not(A))"))
    assert alcp_entails(parse_kb("Language: ALCp\nSubClassOf(A B)"), SubClass(Not(B), Not(A)))
    kb = load_kb("cone-alcp")
    assert alcp_entails(kb, SubClass(And(A, Not(B)), C)) and not alcp_entails(kb, SubClass(A, C))
    assert alcp_entails(kb, ConceptAssertion(Or(B, C), "a"))
    assert not alcp_entails(kb, ConceptAssertion(A, "b"))


ALCP_SIG = Signature(("A", "B", "C"), (), ("a",))
ALCP_AXIOMS = list(enumerate_language(ALCP_SIG, "ALCp"))


@given(st.lists(st.sampled_from(ALCP_AXIOMS), max_size=4), st.lists(st.sampled_from(ALCP_AXIOMS), max_size=3),
       st.sampled_from(ALCP_AXIOMS))
@settings(max_examples=300, deadline=None)
def test_alcp_entailment_monotone(base, more, q):
    small = gen.split(ALCP_SIG, base, "ALCp")
    big = gen.split(ALCP_SIG, base + more, "ALCp")
    if alcp_entails(small, q):
        assert alcp_entails(big, q)


@given(st.lists(st.sampled_from(ALCP_AXIOMS), max_size=3), st.sampled_from(ALCP_AXIOMS))
@settings(max_examples=150, deadline=None)
def test_alcp_agrees_with_one_element_models(axioms, q):
    # propositional: every model splits into one-element models, one per individual
    kb = gen.split(ALCP_SIG, axioms, "ALCp")
    assert alcp_entails(kb, q) == bounded_entails(kb, q, 2)


# ---------------------------------------------------------------- finite model search

def test_finite_model_search_examples():
    assert finite_model_search(load_kb("example1"), 3) is None
    kb = load_kb("example2")
    m = finite_model_search(kb, 2)
    assert m is not None and len(m.domain) == 2
    assert all(classical_satisfies(m, ax) for ax in kb.axioms)
    empty = KnowledgeBase(Signature((), (), ()), (), (), "ELO-bot-nf")
    assert len(finite_model_search(empty, 1).domain) == 1


# ---------------------------------------------------------------- patterns

def test_chase_examples():
    res = pattern_chase(parse_kb("Language: patterns-no-comp\nPattern(Hierarchy r s)\nAssert(r a b)"))
    assert ("s", "a", "b") in res.closure and res.consistent
    ex2 = pattern_chase(load_kb("example2-patterns"))
    assert ex2.consistent and len(ex2.closure) == 4
    assert consistent(load_kb("example3"))


def test_pattern_entails_examples():
    P = Pattern
    assert pattern_entails([P("Inversion", ("r", "s"))], P("Inversion", ("s", "r")))
    assert pattern_entails([P("Hierarchy", ("r", "s")), P("Hierarchy", ("s", "t"))], P("Hierarchy", ("r", "t")))
    assert pattern_entails([P("Exclusion", ("r", "s"))], P("Exclusion", ("s", "r")))
    assert not pattern_entails([P("Hierarchy", ("r", "s"))], P("Hierarchy", ("s", "r")))
    assert pattern_entails([P("Symmetry", ("r",)), P("Asymmetry", ("r",))], P("Hierarchy", ("r", "s")))


FULL_SIG = Signature((), ("r", "s", "t"), ())
FULL_PATTERNS = list(enumerate_language(FULL_SIG, "patterns-full"))
NAMES = ["a", "b", "c", "d"]


@given(st.lists(st.sampled_from(FULL_PATTERNS), max_size=5),
       st.lists(st.tuples(st.sampled_from(["r", "s", "t"]), st.sampled_from(NAMES), st.sampled_from(NAMES)),
                max_size=6),
       st.randoms(use_true_random=False))
@settings(max_examples=300, deadline=None)
def test_chase_is_order_independent(patterns, facts, rnd):
    rules = [x for p in patterns for x in rules_of(p)]
    first = chase(rules, facts)
    shuffled_rules, shuffled_facts = list(rules), list(facts)
    rnd.shuffle(shuffled_rules)
    rnd.shuffle(shuffled_facts)
    assert chase(shuffled_rules, shuffled_facts) == first


TWO_ROLE = list(enumerate_language(Signature((), ("r", "s"), ()), "patterns-full"))


@pytest.fixture(scope="module")
def two_role_tables():
    return [pattern_truth_table(TWO_ROLE, ("r", "s"), n) for n in (1, 2, 3)]


def test_pattern_entails_matches_bounded_refutation(two_role_tables):
    """Exhaustive over every pattern set on two roles, countermodels up to three elements."""
    assert len(TWO_ROLE) == 10
    for mask in range(1 << len(TWO_ROLE)):
        chosen = [i for i in range(len(TWO_ROLE)) if mask >> i & 1]
        pats = [TWO_ROLE[i] for i in chosen]
        models = [t[chosen].all(axis=0) if chosen else np.ones(t.shape[1], bool) for t in two_role_tables]
        for j, phi in enumerate(TWO_ROLE):
            oracle = not any((m & ~t[j]).any() for m, t in zip(models, two_role_tables))
            assert pattern_entails(pats, phi) == oracle, (pats, phi)
