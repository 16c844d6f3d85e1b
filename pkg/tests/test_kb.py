import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kbgeom.errors import KBGeomError, LanguageError, ParseError, ResourceCapError
from kbgeom.kb import (
    FiniteInterpretation, KnowledgeBase, Signature, abox_to_tbox, classical_satisfies, enumerate_language,
    is_normal, normalize, parse_axiom, parse_kb, ser_axiom, serialize_kb,
)
from kbgeom.kb.syntax import (
    BOT, TOP, And, Comp, ConceptAssertion, Exists, Forall, Inv, Name, NegRole, Nominal, Not, Or, Pattern,
    RName, RoleAssertion, SubClass, SubRole, pattern_to_dl,
)
from kbgeom.reasoner import bounded_entails

from oracles import brute_concept, brute_role

A, B, C, D = Name("A"), Name("B"), Name("C"), Name("D")
r, s, t = RName("r"), RName("s"), RName("t")


# ---------------------------------------------------------------- parsing

def test_parse_example1():
    kb = parse_kb("SubClassOf(A Bot)\nAssert(A a)")
    assert kb.tbox == (SubClass(A, BOT),)
    assert kb.abox == (ConceptAssertion(A, "a"),)


def test_parse_signature_only():
    kb = parse_kb("Concepts: A B\nRoles: r\nIndividuals: a\n")
    assert kb.axioms == ()
    assert kb.signature == Signature(("A", "B"), ("r",), ("a",))


def test_parse_composition_under_no_comp_tag():
    with pytest.raises(LanguageError):
        parse_kb("Language: patterns-no-comp\nPattern(Composition r s t)")


@pytest.mark.parametrize("text", ["SubClassOf(A", "SubClassOf(A B C)", "Frobnicate(A)", "Assert(A)",
                                  "Language: nonsense", "Pattern(Symmetry r r2 r3)", "SubClassOf(X0 A)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_kb(text)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_kb("SubClassOf(A B)\nSubClassOf(A $)")
    assert exc.value.line == 2 and exc.value.exit_code == 2


def test_comments_and_blank_lines():
    kb = parse_kb("# header\n\nSubClassOf(A B)  # trailing\n")
    assert kb.tbox == (SubClass(A, B),)


# ---------------------------------------------------------------- round trip

SIG = Signature(("A", "B", "C"), ("r", "s"), ("a", "b"))
TAGS = ["ELO-bot-nf", "ELHO-comp-bot-nf", "ELHI-bot-nf", "patterns-no-comp", "patterns-full", "ALCp"]
LANG = {tag: list(enumerate_language(SIG, tag)) for tag in TAGS}


def boolean_concepts():
    leaves = st.sampled_from([TOP, BOT, A, B, C])
    return st.recursive(leaves, lambda ch: st.one_of(
        st.builds(Not, ch), st.builds(And, ch, ch), st.builds(Or, ch, ch)), max_leaves=6)


@st.composite
def random_kbs(draw):
    tag = draw(st.sampled_from(TAGS))
    axioms = draw(st.lists(st.sampled_from(LANG[tag]), max_size=8, unique=True))
    if tag == "ALCp":
        axioms += draw(st.lists(st.builds(SubClass, boolean_concepts(), boolean_concepts()), max_size=3))
    tb = tuple(a for a in axioms if not isinstance(a, (ConceptAssertion, RoleAssertion)))
    ab = tuple(a for a in axioms if isinstance(a, (ConceptAssertion, RoleAssertion)))
    return KnowledgeBase(SIG, tb, ab, tag)


@given(random_kbs())
@settings(max_examples=200, deadline=None)
def test_serialize_parse_round_trip(kb):
    back = parse_kb(serialize_kb(kb))
    assert back.tbox == kb.tbox and back.abox == kb.abox and back.language == kb.language


@given(random_kbs())
@settings(max_examples=100, deadline=None)
def test_axiom_round_trip(kb):
    for ax in kb.axioms:
        assert parse_axiom(ser_axiom(ax)) == ax


# ---------------------------------------------------------------- ABox encoding

def test_abox_to_tbox_examples():
    kb = parse_kb("Assert(A a)\nAssert(r a b)")
    out = abox_to_tbox(kb)
    assert out.abox == ()
    assert SubClass(Nominal("a"), A) in out.tbox
    assert SubClass(Nominal("a"), Exists(r, Nominal("b"))) in out.tbox
    empty = parse_kb("SubClassOf(A B)")
    assert abox_to_tbox(empty).tbox == empty.tbox


# ---------------------------------------------------------------- normalization

def test_normalize_examples():
    X0 = Name("X0")
    assert normalize([SubClass(A, Exists(r, And(B, C)))]) == [
        SubClass(A, Exists(r, X0)), SubClass(X0, B), SubClass(X0, C)]
    assert normalize([SubClass(A, B)]) == [SubClass(A, B)]
    assert normalize([SubClass(And(And(A, B), C), D)]) == [
        SubClass(And(A, B), X0), SubClass(And(X0, C), D)]


el_concepts = st.recursive(
    st.sampled_from([TOP, A, B]),
    lambda ch: st.one_of(st.builds(And, ch, ch), st.builds(lambda f: Exists(r, f), ch)),
    max_leaves=4)


@given(st.lists(st.builds(SubClass, el_concepts, st.one_of(el_concepts, st.just(BOT))), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_normalize_output_is_normal(tbox):
    assert all(is_normal(ax) for ax in normalize(tbox))


@given(st.lists(st.builds(SubClass, el_concepts, st.one_of(el_concepts, st.just(BOT))), min_size=1, max_size=2))
@settings(max_examples=40, deadline=None)
def test_normalize_preserves_entailment(tbox):
    norm = normalize(tbox)
    fresh = sorted({n for ax in norm for n in _names(ax)} - {"A", "B"})
    assume(len(fresh) <= 1)
    sig = Signature(("A", "B"), ("r",), ())
    orig = KnowledgeBase(sig, tuple(tbox), (), "ALCp")
    new = KnowledgeBase(sig.extend(concepts=fresh), tuple(norm), (), "ALCp")
    for q in enumerate_language(sig, "ELO-bot-nf"):
        try:
            assert bounded_entails(orig, q, 3) == bounded_entails(new, q, 3)
        except ResourceCapError:
            assume(False)


def _names(ax):
    from kbgeom.kb.syntax import symbols
    return symbols(ax)[0]


# ---------------------------------------------------------------- patterns

def test_pattern_to_dl_examples():
    assert pattern_to_dl(Pattern("Symmetry", ("r",))) == SubRole(r, Inv(r))
    assert pattern_to_dl(Pattern("Composition", ("r", "s", "t"))) == SubRole(Comp(r, s), t)
    assert pattern_to_dl(Pattern("Asymmetry", ("r",))) == SubRole(r, NegRole(Inv(r)))


# ---------------------------------------------------------------- classical semantics

def test_classical_satisfies_examples():
    i = FiniteInterpretation((1, 2), {"A": frozenset({1}), "B": frozenset({1, 2})}, {}, {})
    assert classical_satisfies(i, SubClass(A, B))
    j = FiniteInterpretation((1, 2), {"C": frozenset({2})}, {"r": frozenset({(1, 2)})}, {"a": 1})
    assert classical_satisfies(j, ConceptAssertion(Exists(r, C), "a"))
    assert not classical_satisfies(FiniteInterpretation((1,)), SubClass(TOP, BOT))


AXIOMS = [
    SubClass(A, BOT), SubClass(TOP, A), SubClass(A, Exists(r, A)), SubClass(Exists(r, A), A),
    SubClass(Exists(Inv(r), TOP), A), SubClass(A, Forall(r, Not(A))), SubClass(Nominal("a"), A),
    SubClass(A, Nominal("a")), SubClass(Or(A, Exists(r, Nominal("a"))), Not(A)),
    SubClass(And(A, Exists(r, TOP)), BOT), ConceptAssertion(Forall(r, A), "a"), RoleAssertion("r", "a", "a"),
    SubRole(r, Inv(r)), SubRole(r, NegRole(Inv(r))), SubRole(Comp(r, r), r), Pattern("Symmetry", ("r",)),
]


def _brute_axiom(ax, dom, conc, role, ind) -> bool:
    if isinstance(ax, Pattern):
        ax = pattern_to_dl(ax)
    if isinstance(ax, SubClass):
        return brute_concept(ax.lhs, dom, conc, role, ind) <= brute_concept(ax.rhs, dom, conc, role, ind)
    if isinstance(ax, ConceptAssertion):
        return ind[ax.ind] in brute_concept(ax.concept, dom, conc, role, ind)
    if isinstance(ax, RoleAssertion):
        return (ind[ax.a], ind[ax.b]) in role[ax.role]
    sub, sup = ax.sub, ax.sup
    if isinstance(sub, Comp):
        p, q = brute_role(sub.first, role), brute_role(sub.second, role)
        lhs = {(x, z) for x, y in p for y2, z in q if y == y2}
    else:
        lhs = brute_role(sub, role)
    if isinstance(sup, NegRole):
        return not (lhs & brute_role(sup.role, role))
    return lhs <= brute_role(sup, role)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classical_satisfies_matches_brute_force(n):
    dom = tuple(range(n))
    pairs = [(x, y) for x in dom for y in dom]
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(dom, k)]
    rels = [frozenset(p for p, bit in zip(pairs, bits) if bit)
            for bits in itertools.product((0, 1), repeat=len(pairs))]
    for a_ext in subsets:
        for r_ext in rels:
            for a in dom:
                conc, role, ind = {"A": a_ext}, {"r": r_ext}, {"a": a}
                i = FiniteInterpretation(dom, conc, role, ind)
                for ax in AXIOMS:
                    assert classical_satisfies(i, ax) == _brute_axiom(ax, dom, conc, role, ind), (ax, conc, role)


# ---------------------------------------------------------------- language enumeration

def test_enumeration_count_without_roles():
    # left atoms {⊤, A, B}, right atoms {⊥, A, B}: 3*3 plain + C(3,2)*3 conjunctions
    got = list(enumerate_language(Signature(("A", "B"), (), ()), "ELO-bot-nf"))
    assert len(got) == 3 * 3 + 3 * 3
    for ax in (SubClass(A, B), SubClass(B, A), SubClass(A, A), SubClass(A, BOT)):
        assert ax in got


def closed_form_nf(nc, nr, ni, tag):
    left = 1 + nc + (ni if tag in ("ELO-bot-nf", "ELHO-comp-bot-nf") else 0)
    right = left
    roles = nr * (2 if tag == "ELHI-bot-nf" else 1)
    n = left * right + left * (left - 1) // 2 * right + 2 * roles * left * right
    if tag == "ELHO-comp-bot-nf":
        n += nr * (nr - 1) + nr ** 3
    if tag == "ELHI-bot-nf":
        n += nr * (nr - 1) + nr * nr + nc * ni + nr * ni * ni
    return n


@pytest.mark.parametrize("tag", ["ELO-bot-nf", "ELHO-comp-bot-nf", "ELHI-bot-nf"])
def test_enumeration_count_matches_shape_count(tag):
    assert len(LANG[tag]) == closed_form_nf(3, 2, 2, tag)


def test_pattern_enumeration_two_roles():
    got = list(enumerate_language(Signature((), ("r", "s"), ()), "patterns-no-comp"))
    # symmetry and asymmetry per role, the three binary kinds over ordered pairs of distinct roles
    want = [Pattern(k, (x,)) for k in ("Symmetry", "Asymmetry") for x in "rs"] + \
        [Pattern(k, p) for k in ("Inversion", "Hierarchy", "Exclusion") for p in (("r", "s"), ("s", "r"))]
    assert sorted(map(str, got)) == sorted(map(str, want))
    assert list(enumerate_language(Signature(("A",), (), ("a",)), "patterns-full")) == []


@pytest.mark.parametrize("tag", TAGS)
def test_enumeration_no_duplicates_and_deterministic(tag):
    first = list(enumerate_language(SIG, tag))
    assert len(first) == len(set(first))
    again = list(enumerate_language(SIG, tag))
    assert again == first
    # prefix stability: a bigger signature extends the stream of a smaller one
    small = [ax for ax in enumerate_language(Signature(("A",), ("r",), ("a",)), tag)]
    assert set(small) <= set(first)


def test_unknown_tag():
    with pytest.raises(KBGeomError):
        list(enumerate_language(SIG, "SROIQ"))
