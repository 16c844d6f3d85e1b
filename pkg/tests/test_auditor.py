import random
from fractions import Fraction as F

import pytest

from kbgeom.auditor.audits import (
    audit_entailment_closure, audit_soundness_instance, audit_strong_faithfulness, audit_weak_faithfulness,
    capture_check,
)
from kbgeom.auditor.certificates import Certificate, model
from kbgeom.auditor.probe import probe_model, probe_separating_model, separation_report
from kbgeom.auditor.properties import (
    TABLE4_MUTATIONS, PropertyMatrix, dump_matrix, lattice_check, load_matrix, mutate, table4,
)
from kbgeom.auditor.symbolic import helly_triples
from kbgeom.auditor.synth import synth_model
from kbgeom.errors import PreconditionError
from kbgeom.geometry import BandStack, HPolyhedron
from kbgeom.gallery.cases import conv_strong_check, fact_kb, load_kb, load_witness, random_fact_pair, retag
from kbgeom.kb import parse_kb
from kbgeom.kb.syntax import (
    BOT, And, ConceptAssertion, KnowledgeBase, Name, Nominal, Pattern, RoleAssertion, SubClass,
)
from kbgeom.reasoner import alcp_entails, consistent
from kbgeom.semantics import Embedding, is_model

import generators as gen

A, B, C, D = Name("A"), Name("B"), Name("C"), Name("D")


# ---------------------------------------------------------------- soundness

def test_soundness_example1_and_fig3():
    for method, kb, wit in (("elem", "example1", "example1"), ("box2el", "example4", "fig3")):
        rep = audit_soundness_instance(method, load_witness(wit), load_kb(kb))
        assert rep.verdict == "refuted"
        (c,) = rep.certificates
        assert c.kind == "unsoundness-witness" and c.verify()


def test_soundness_passes_on_consistent_kb():
    rep = audit_soundness_instance("conv", load_witness("hierarchy"), load_kb("hierarchy"))
    assert rep.verdict == "inconclusive" and not rep.certificates


def test_soundness_needs_a_model():
    e = load_witness("example1")
    kb = parse_kb("Concepts: A\nIndividuals: a\nSubClassOf(Top Bot)")
    with pytest.raises(PreconditionError):
        audit_soundness_instance("elem", e, kb)


# ---------------------------------------------------------------- entailment closure and faithfulness

def test_entailment_closure_fig3_modified():
    kb, e = load_kb("example4-mod"), load_witness("fig3")
    missed = {v.axiom for v in audit_entailment_closure(e, kb) if v.origin == "ABox"}
    assert SubClass(Nominal("a"), A) in missed and SubClass(Nominal("a"), D) in missed


@pytest.mark.parametrize("name", ["conv-elhi", "conv-elh", "hierarchy"])
def test_conv_models_are_entailment_closed(name):
    kb = retag(load_kb(name), "ELHI-bot-nf")
    e = synth_model("conv", kb)
    assert e is not None and is_model(e, kb)
    assert audit_entailment_closure(e, kb) == []


def test_weak_faithfulness_example5():
    kb = load_kb("example5")
    e = synth_model("elem", kb)
    assert e is not None and is_model(e, kb)
    vs = audit_weak_faithfulness(e, kb)
    assert SubClass(Nominal("a"), BOT) in {v.axiom for v in vs}


def test_strong_faithfulness_translation_meet():
    kb = load_kb("example7")
    e = synth_model("elem", kb)
    q = SubClass(And(C, D), BOT)
    assert q in {v.axiom for v in audit_strong_faithfulness(e, kb)}
    c = Certificate("non-strong-faithful", "elem", kb, e, (q,))
    assert c.verify()


def test_conv_strong_construction_role_free():
    checks = conv_strong_check(load_kb("hierarchy"), "hierarchy")
    assert all(c.ok for c in checks)


@pytest.mark.slow
def test_conv_strong_construction_with_role():
    kb = parse_kb("Language: ELHI-bot-nf\nConcepts: A B\nRoles: r\nSubClassOf(A Exists(r B))")
    checks = conv_strong_check(kb, "exists")
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


METHODS_FOR_RANDOM = ("elem", "elbe", "boxel")


def test_strong_clean_implies_weak_clean():
    """A weak violation α has K ∪ {α} inconsistent, so K cannot entail α: every
    weak violation is also a strong one."""
    rng = random.Random(5)
    checked = clean = 0
    while checked < 40:
        kb = gen.random_elo_kb(rng, 3)
        if not consistent(kb):
            continue
        method = METHODS_FOR_RANDOM[checked % 3]
        e = synth_model(method, kb, 300, checked)
        if e is None:
            continue
        checked += 1
        weak = {v.axiom for v in audit_weak_faithfulness(e, kb)}
        strong = {v.axiom for v in audit_strong_faithfulness(e, kb)}
        assert weak <= strong
        if not strong:
            clean += 1
            assert not weak
    assert checked == 40


# ---------------------------------------------------------------- certificates

def test_certificates_reject_wrong_claims():
    kb, e = load_kb("hierarchy"), load_witness("hierarchy")
    assert not Certificate("unsoundness-witness", "conv", kb, e).verify()
    entailed = kb.tbox[0]
    assert not Certificate("non-strong-faithful", "conv", kb, e, (entailed,)).verify()
    assert not Certificate("non-entailed-model", "conv", kb, e, (entailed,)).verify()
    with pytest.raises(ValueError):
        Certificate("proof-by-intimidation", "conv")


def test_report_json_round_trip_is_stable():
    rep = audit_soundness_instance("elem", load_witness("example1"), load_kb("example1"))
    assert rep.to_dict() == rep.to_dict()
    d = rep.to_dict()
    assert d["verdict"] == "refuted" and d["certificates"][0]["kind"] == "unsoundness-witness"


# ---------------------------------------------------------------- probes

def test_boxe_separates_random_fact_sets():
    rng = random.Random(3)
    for _ in range(20):
        pos, neg = random_fact_pair(rng, ("r1", "r2"), ("a", "b", "c"), max_facts=5)
        kb = fact_kb(pos, "patterns-no-comp", ("r1", "r2"), ("a", "b", "c"))
        c = probe_separating_model("boxe", kb, neg)
        assert c.kind == "separation-found" and c.verify()


def test_boxe_trivial_separation():
    kb = KnowledgeBase(parse_kb("Concepts: A\nIndividuals: a").signature, (), (), "patterns-no-comp")
    c = probe_separating_model("boxe", kb, [ConceptAssertion(A, "a")])
    assert c.kind == "separation-found" and c.verify()


def test_elem_cannot_separate_two_cycle_from_loop():
    pos = parse_kb("Language: ELO-bot-nf\nRoles: r\nIndividuals: a b\nAssert(r a b)\nAssert(r b a)")
    neg = [RoleAssertion("r", "a", "a")]
    for budget in (50, 400):
        c = probe_separating_model("elem", pos, neg, budget)
        assert c.kind == "separation-not-found"
        assert c.symbolic is not None and c.symbolic.holds and c.verify()
    assert separation_report("elem", pos, neg, 50).verdict == "refuted"


def test_probe_rejects_entailed_negatives():
    pos = parse_kb("Language: patterns-no-comp\nPattern(Hierarchy r s)\nAssert(r a b)")
    with pytest.raises(PreconditionError):
        probe_separating_model("boxe", pos, [RoleAssertion("s", "a", "b")])


@pytest.mark.parametrize("method,language", [("boxe", "patterns-no-comp"), ("expr", "patterns-full"),
                                             ("boxel", "ELO-bot-nf"), ("elem", "ELO-bot-nf")])
def test_found_separations_always_verify(method, language):
    rng = random.Random(17)
    for _ in range(15):
        pos, neg = random_fact_pair(rng, ("r",), ("a", "b"), max_facts=3)
        kb = fact_kb(pos, language, ("r",), ("a", "b"))
        if any(n in pos for n in neg):
            continue
        c = probe_separating_model(method, kb, neg, 150, 0)
        if c.kind == "separation-found":
            assert c.embedding is not None and c.verify()
        else:
            assert c.embedding is None


def test_probe_model_reports():
    rep = probe_model("boxe", load_kb("example3"), 200)
    assert rep.verdict == "refuted" and rep.info["model_found"] is False
    assert all(c.verify() for c in rep.certificates)
    with pytest.raises(PreconditionError):
        probe_model("elem", load_kb("example1"))


# ---------------------------------------------------------------- synthesis

def test_synth_examples():
    assert synth_model("conv", load_kb("example2")) is None
    kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A B)")
    e = synth_model("elbe", kb)
    assert e is not None and is_model(e, kb)
    assert e.concept("A").subset(e.concept("B"))


# ---------------------------------------------------------------- capture

def test_capture_examples():
    sym = Embedding("expr", 1, {}, {}, {"r": BandStack.from_bands((1,), (0,), (2,)),
                                        "s": BandStack.from_bands((1,), (5,), (1,))})
    S = [Pattern("Symmetry", ("r",))]
    res = capture_check(sym, S, "patterns-full")
    assert res["exactly"]
    nested = Embedding("expr", 1, {}, {}, {"r": BandStack.from_bands((1,), (0,), (1,)),
                                           "s": BandStack.from_bands((1,), (0,), (2,))})
    res = capture_check(nested, S, "patterns-full")
    assert res["exactly"] and not res["exclusively"]
    assert Pattern("Hierarchy", ("r", "s")) in res["uncaptured"]
    with pytest.raises(PreconditionError):
        capture_check(nested, S, "ELO-bot-nf")


# ---------------------------------------------------------------- lattice

def test_table4_is_lattice_consistent():
    assert lattice_check(table4(), finite=True) == []
    assert lattice_check(table4(), finite=False) == []


@pytest.mark.parametrize("mutation", TABLE4_MUTATIONS)
def test_table4_mutations_break_lattice(mutation):
    assert len(lattice_check(mutate(table4(), mutation), finite=True)) >= 1


def test_elem_strong_ability_flip_names_completeness():
    vs = lattice_check(mutate(table4(), ("elem", "exists-Strong-KB", "yes")))
    assert any(v.method == "elem" and v.conclusion == "Completeness" for v in vs)


def test_empty_matrix_and_csv_round_trip():
    assert lattice_check(PropertyMatrix.from_rows((), (), (), {})) == []
    m = table4()
    assert dump_matrix(load_matrix(dump_matrix(m))) == dump_matrix(m)


# ---------------------------------------------------------------- Helly

def test_helly_ternary_disjointness():
    kb = load_kb("helly")
    names = [f"C{k}" for k in range(1, 5)]
    rng = random.Random(2)
    seen = 0
    while seen < 25:
        regions = {}
        for c in names:
            lo = [rng.randint(-4, 3) for _ in range(2)]
            hi = [x + rng.randint(1, 4) for x in lo]
            regions[c] = HPolyhedron.from_box(tuple(map(F, lo)), tuple(map(F, hi)))
        e = Embedding("conv", 2, {}, regions, {})
        if not model(e, kb):
            continue
        seen += 1
        triples = helly_triples([regions[c] for c in names])
        assert triples
        i, j, k = triples[0]
        ax = SubClass(And(And(Name(names[i]), Name(names[j])), Name(names[k])), BOT)
        assert not alcp_entails(kb, ax)
        c = Certificate("non-strong-faithful", "conv", kb, e, (ax,))
        assert c.verify()
