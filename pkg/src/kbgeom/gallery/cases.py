"""Executable gallery: each case loads a KB (and maybe a witness) from the data
directory and checks a claim about it through the auditor.

A case passes when all of its sub-checks pass; a failing case names the
sub-checks that did not.
"""
from __future__ import annotations

import fnmatch
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..auditor.audits import (
    audit_entailment_closure, audit_strong_faithfulness, audit_weak_faithfulness, audit_soundness_instance,
    capture_check,
)
from ..auditor.certificates import Certificate, model, sat
from ..auditor.probe import probe_model, probe_separating_model, search_separation
from ..auditor.properties import lattice_check, table4
from ..auditor.symbolic import (
    box2el_head_chain, boxe_exclusion_contradiction, elem_nominal_collapse, elem_translation_meet,
    helly_triples, midpoint_conflict,
)
from ..auditor.synth import conv_from_interpretation, synth_model, _fill_names
from ..errors import KBGeomError
from ..geometry import Box, HPolyhedron
from ..kb import is_classical_model, parse_axiom, parse_kb
from ..kb.syntax import And, Bot, KnowledgeBase, Name, Nominal, Pattern, RoleAssertion, SubClass
from ..reasoner import alcp_entails, consistent, entails, horn_model, pattern_entails
from ..semantics import Embedding, elem_loss, is_model, loads_embedding, satisfies
from .induced import boxe_induced, conv_induced, expr_induced, simplex_vertices

UNIVERSAL_SAMPLES = 50


# ---------------------------------------------------------------- data access
def _data(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_kb(name: str) -> KnowledgeBase:
    return parse_kb(_data(name + ".kb"))


def load_witness(name: str) -> Embedding:
    return loads_embedding(_data(name + ".emb.json"))


def retag(kb: KnowledgeBase, language: str) -> KnowledgeBase:
    return KnowledgeBase(kb.signature, kb.tbox, kb.abox, language)


# ---------------------------------------------------------------- report types
@dataclass
class Check:
    name: str
    ok: bool
    certificates: Tuple[Certificate, ...] = ()

    def to_dict(self):
        return {"check": self.name, "ok": bool(self.ok),
                "certificates": [c.to_dict() for c in self.certificates]}


@dataclass
class GalleryCase:
    id: str
    anchor: str
    claim: Callable[["Context"], List[Check]]
    kb: Optional[str] = None
    witness: Optional[str] = None


@dataclass
class CaseResult:
    id: str
    anchor: str
    checks: List[Check]
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.ok]

    @property
    def certificates(self) -> List[Certificate]:
        return [x for c in self.checks for x in c.certificates]

    def to_dict(self):
        return {"id": self.id, "anchor": self.anchor, "passed": self.passed, "failed": self.failed,
                "checks": [c.to_dict() for c in self.checks]}


@dataclass
class GalleryReport:
    results: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self):
        return {"cases": [r.to_dict() for r in self.results],
                "passed": sum(r.passed for r in self.results), "total": len(self.results)}

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            tail = "" if r.passed else "  failed: " + ", ".join(r.failed)
            out.append(f"{'PASS' if r.passed else 'FAIL'} {r.id}{tail}")
        out.append(f"{sum(r.passed for r in self.results)}/{len(self.results)} cases passed")
        return out


@dataclass
class Context:
    seed: int = 0
    budget: int = 2000
    samples: int = UNIVERSAL_SAMPLES


def _verified(name: str, cert: Certificate) -> Check:
    return Check(name, cert.verify(), (cert,))


def _models(method: str, kb: KnowledgeBase, ctx: Context, n: Optional[int] = None) -> List[Embedding]:
    """Synthesized models with seeds seed, seed+1, ...; ``None`` entries are skipped."""
    out = []
    for k in range(n or ctx.samples):
        e = synth_model(method, kb, ctx.budget, ctx.seed + k)
        if e is not None:
            out.append(e)
    return out


def _universal(name: str, method: str, kb: KnowledgeBase, ctx: Context, claim, symbolic_holds: bool) -> List[Check]:
    """Sampled models and the symbolic argument must both support the claim."""
    ms = _models(method, kb, ctx)
    sampled = len(ms) == ctx.samples and all(claim(e) for e in ms)
    return [Check(f"{name}: {ctx.samples} synthesized {method} models", sampled),
            Check(f"{name}: symbolic argument", symbolic_holds),
            Check(f"{name}: sampled and symbolic agree", sampled == symbolic_holds)]


# ---------------------------------------------------------------- examples
def _unsound(method: str, kb_name: str, witness: str) -> Callable[[Context], List[Check]]:
    def run(ctx: Context) -> List[Check]:
        kb, e = load_kb(kb_name), load_witness(witness)
        rep = audit_soundness_instance(method, e, kb)
        out = [Check("KB is inconsistent", not consistent(kb)),
               Check(f"witness is a {method}-model", bool(is_model(e, kb)))]
        out += [_verified("unsoundness-witness", c) for c in rep.certificates]
        out.append(Check("verdict refuted", rep.verdict == "refuted"))
        return out
    return run


def case_example1_loss(ctx: Context) -> List[Check]:
    kb, e = load_kb("example1"), load_witness("example1")
    return [Check("loss 0 at margin 0", elem_loss(e, kb, 0) == 0),
            Check("loss 1/10 at margin -1/10", elem_loss(e, kb, Fraction(-1, 10)) == Fraction(1, 10))]


def case_example2(ctx: Context) -> List[Check]:
    kb, e = load_kb("example2"), load_witness("example2")
    facts = retag(KnowledgeBase(kb.signature, (), kb.abox), kb.language)
    ex = kb.tbox[0]
    sym = midpoint_conflict(kb, e)
    cert = Certificate("incompleteness-argument", "conv", kb, None, (), {"budget": ctx.budget, "seed": ctx.seed},
                       midpoint_conflict(kb), (kb,))
    return [Check("KB is consistent", consistent(kb)),
            Check("conv synthesis finds no model", synth_model("conv", kb, ctx.budget, ctx.seed) is None),
            Check("embedding satisfies the four facts", bool(is_model(e, facts))),
            Check("midpoint v⊕v lies in both role regions", sym.holds),
            Check("disjointness fails in the embedding", not satisfies(e, ex)),
            _verified("incompleteness-argument (midpoint)", cert)]


def case_example3(ctx: Context) -> List[Check]:
    kb = load_kb("example3")
    rep = probe_model("boxe", kb, ctx.budget, ctx.seed)
    return [Check("KB is consistent", consistent(kb)),
            Check("BoxE synthesis fails within budget", rep.info.get("model_found") is False),
            Check("coordinate contradiction", boxe_exclusion_contradiction(kb).holds),
            Check("verdict refuted", rep.verdict == "refuted")] + \
        [_verified("incompleteness-argument", c) for c in rep.certificates]


def fig3_constraints(e: Embedding) -> List[Tuple[str, bool]]:
    """The box constraints of the Box2EL witness, checked one by one with plain box operations."""
    box = lambda c: e.concept(c)[0]  # noqa: E731
    bump = lambda c: e.concept(c)[1]  # noqa: E731
    pt = lambda a: Box.point(e.ind(a)[0])  # noqa: E731
    ibump = lambda a: e.ind(a)[1]  # noqa: E731
    head = lambda r: e.role(r)[0]  # noqa: E731
    tail = lambda r: e.role(r)[1]  # noqa: E731
    neg = lambda v: tuple(-x for x in v)  # noqa: E731
    return [
        ("Head(r) - Bump(B) ⊆ Box(A)", head("r").translate(neg(bump("B"))).subset(box("A"))),
        ("Head(s) - Bump(C) ⊆ Box(D)", head("s").translate(neg(bump("C"))).subset(box("D"))),
        ("Box(A) ∩ Box(D) = ∅", box("A").intersect(box("D")).is_empty()),
        ("Box({a}) + Bump({b}) ⊆ Head(r)", pt("a").translate(ibump("b")).subset(head("r"))),
        ("Box({b}) + Bump({a}) ⊆ Tail(r)", pt("b").translate(ibump("a")).subset(tail("r"))),
        ("Box({a}) + Bump({c}) ⊆ Head(s)", pt("a").translate(ibump("c")).subset(head("s"))),
        ("Box({c}) + Bump({a}) ⊆ Tail(s)", pt("c").translate(ibump("a")).subset(tail("s"))),
        ("Box({b}) ⊆ Box(B)", pt("b").subset(box("B"))),
        ("Box({c}) ⊆ Box(C)", pt("c").subset(box("C"))),
    ]


def case_example4(ctx: Context) -> List[Check]:
    kb, e = load_kb("example4"), load_witness("fig3")
    out = [Check(name, bool(ok)) for name, ok in fig3_constraints(e)]
    rep = audit_soundness_instance("box2el", e, kb)
    out += [Check("KB is inconsistent", not consistent(kb)),
            Check("witness is a Box2EL-model", bool(is_model(e, kb)))]
    out += [_verified("unsoundness-witness", c) for c in rep.certificates]
    return out


def case_example4_mod(ctx: Context) -> List[Check]:
    kb, e = load_kb("example4-mod"), load_witness("fig3")
    out = [Check("KB is consistent", consistent(kb))]
    for q in ("Assert(A a)", "Assert(D a)"):
        ax = parse_axiom(q, kb.signature)
        out.append(Check(f"KB entails {q}", entails(kb, ax)))
        out.append(_verified(f"witness fails {q}", Certificate("non-entailed-model", "box2el", kb, e, (ax,))))
    missed = {v.axiom for v in audit_entailment_closure(e, kb) if v.origin == "ABox"}
    wanted = {SubClass(Nominal("a"), Name(c)) for c in "AD"}
    out.append(Check("ABox-entailment audit reports both", wanted <= missed))
    return out


def case_example5(ctx: Context) -> List[Check]:
    kb = load_kb("example5")
    B, C = parse_axiom("Assert(B a)", kb.signature), parse_axiom("Assert(C a)", kb.signature)
    sym = elem_nominal_collapse(kb)
    out = [Check("KB is consistent", consistent(kb)),
           Check("B(a), C(a) jointly inconsistent with the KB", not consistent(kb.with_axioms([B, C])))]
    for method in ("elem", "emel"):
        k = kb if method == "elem" else retag(kb, "ELHO-comp-bot-nf")
        out += _universal(f"{method} satisfies B(a) and C(a)", method, k, ctx,
                          lambda e: sat(e, B) and sat(e, C), sym.holds and "a" in sym.derived)
        e = synth_model(method, k, ctx.budget, ctx.seed)
        out.append(_verified(f"{method}: non-weak-faithful (joint)",
                             Certificate("non-weak-faithful", method, k, e, (B, C), {"origin": "ABox"})))
        nom = SubClass(Nominal("a"), Bot())
        out.append(_verified(f"{method}: non-weak-faithful on {{a}} ⊑ ⊥",
                             Certificate("non-weak-faithful", method, k, e, (nom,), {"origin": "TBox"})))
        vs = audit_weak_faithfulness(e, k)
        out.append(Check(f"{method}: weak audit flags {{a}} ⊑ ⊥", any(v.axiom == nom for v in vs)))
    return out


def case_example6(ctx: Context) -> List[Check]:
    kb = load_kb("example6")
    q = parse_axiom("SubClassOf(Exists(r1 C) D)", kb.signature)
    sym = box2el_head_chain(kb)
    out = [Check("∃r1.C ⊑ D is not entailed", not entails(kb, q))]
    out += _universal("box2el satisfies ∃r1.C ⊑ D", "box2el", kb, ctx, lambda e: sat(e, q),
                      sym.holds and q in sym.derived)
    e = synth_model("box2el", kb, ctx.budget, ctx.seed)
    out.append(_verified("non-strong-faithful", Certificate("non-strong-faithful", "box2el", kb, e, (q,),
                                                            {"origin": "TBox"})))
    return out


def case_example7(ctx: Context) -> List[Check]:
    kb = load_kb("example7")
    q = parse_axiom("SubClassOf(And(C D) Bot)", kb.signature)
    sym = elem_translation_meet(kb)
    out = [Check("C ⊓ D ⊑ ⊥ is not entailed", not entails(kb, q))]
    for method in ("elem", "emel"):
        k = kb if method == "elem" else retag(kb, "ELHO-comp-bot-nf")
        out += _universal(f"{method} satisfies C ⊓ D ⊑ ⊥", method, k, ctx, lambda e: sat(e, q),
                          sym.holds and q in sym.derived)
        e = synth_model(method, k, ctx.budget, ctx.seed)
        out.append(_verified(f"{method}: non-strong-faithful",
                             Certificate("non-strong-faithful", method, k, e, (q,), {"origin": "TBox"})))
    return out


# ---------------------------------------------------------------- expressiveness
def random_fact_pair(rng: random.Random, roles: Sequence[str], inds: Sequence[str], concepts: Sequence[str] = (),
                     max_facts: int = 6) -> Tuple[List, List]:
    """Disjoint positive and negative fact sets, each with at most ``max_facts`` facts."""
    pool = [RoleAssertion(r, a, b) for r in roles for a in inds for b in inds]
    from ..kb.syntax import ConceptAssertion
    pool += [ConceptAssertion(Name(c), a) for c in concepts for a in inds]
    k = rng.randint(1, min(len(pool), 2 * max_facts))
    picked = rng.sample(pool, k)
    cut = rng.randint(max(0, k - max_facts), min(k, max_facts))
    return picked[:cut], picked[cut:]


def fact_kb(pos, language: str, roles=(), inds=(), concepts=()) -> KnowledgeBase:
    from ..kb.syntax import Signature
    return KnowledgeBase(Signature(tuple(concepts), tuple(roles), tuple(inds)), (), tuple(pos), language)


def abox_separation(method: str, language: str, ctx: Context, n: int, concepts=()) -> Check:
    rng = random.Random(ctx.seed)
    ok = 0
    for _ in range(n):
        pos, neg = random_fact_pair(rng, ("r1", "r2"), ("a", "b", "c"), concepts)
        kb = fact_kb(pos, language, ("r1", "r2"), ("a", "b", "c"), concepts)
        c = probe_separating_model(method, kb, neg, ctx.budget, ctx.seed)
        ok += c.kind == "separation-found" and c.verify()
    return Check(f"{method}: separating model for {n} random fact pairs", ok == n)


def tbox_capture(method: str, language: str, patterns: Sequence[Pattern], ctx: Context,
                 signature_kb: KnowledgeBase) -> List[Check]:
    """For every subset S of ``patterns``, an embedding capturing S exactly and exclusively."""
    out = []
    for mask in range(1 << len(patterns)):
        S = [p for k, p in enumerate(patterns) if mask >> k & 1]
        neg = [p for p in patterns if not pattern_entails(S, p)]
        kb = KnowledgeBase(signature_kb.signature, tuple(S), (), language)
        e = search_separation(method, kb, neg, ctx.budget, ctx.seed)
        cap = capture_check(e, S, language, patterns) if e is not None else {"exactly": False, "exclusively": False}
        out.append(Check(f"{method}: captures {{{', '.join(map(str, S))}}} exactly and exclusively",
                         cap["exactly"] and cap["exclusively"]))
    return out


def case_example8(ctx: Context) -> List[Check]:
    sig = load_kb("example8")
    L = [Pattern("Exclusion", ("r1", "r2")), Pattern("Exclusion", ("r2", "r1"))]
    out = []
    for method, language, incomplete in (("expr", "patterns-full", "example2-patterns"),
                                         ("boxe", "patterns-no-comp", "example3")):
        out.append(abox_separation(method, language, ctx, 10))
        out += tbox_capture(method, language, L, ctx, sig)
        kb = retag(load_kb(incomplete), language)
        rep = probe_model(method, kb, ctx.budget, ctx.seed)
        out.append(Check(f"{method}: incomplete on a consistent KB, so not fully KB-expressive",
                         rep.verdict == "refuted" and all(c.verify() for c in rep.certificates)))
    return out


# ---------------------------------------------------------------- convex models
def case_conv_sound_complete(ctx: Context) -> List[Check]:
    out = []
    for name in ("conv-elhi", "hierarchy", "conv-elh", "example1"):
        kb = retag(load_kb(name), "ELHI-bot-nf")
        e = synth_model("conv", kb, ctx.budget, ctx.seed)
        ok = consistent(kb)
        out.append(Check(f"conv: {name} has a model iff consistent ({ok})",
                         (e is not None and bool(is_model(e, kb))) == ok))
    for name in ("cone-alcp", "hierarchy-alcp", "cone-inconsistent"):
        kb = load_kb(name)
        e = synth_model("cone", kb)
        ok = consistent(kb)
        out.append(Check(f"cone: {name} has a model iff consistent ({ok})",
                         (e is not None and bool(is_model(e, kb))) == ok))
    return out


def case_conv_induced(ctx: Context) -> List[Check]:
    out = []
    for name in ("conv-elhi", "conv-elh", "hierarchy"):
        kb = load_kb(name)
        e = synth_model("conv", kb, ctx.budget, ctx.seed)
        if e is None:
            out.append(Check(f"{name}: conv model", False))
            continue
        i = conv_induced(e, simplex_vertices(e.dim))
        out.append(Check(f"{name}: induced interpretation is a classical model", is_classical_model(i, kb.axioms)))
    return out


def case_conv_entailed_weak(ctx: Context) -> List[Check]:
    out = []
    for name in ("hierarchy", "conv-elh"):
        kb = load_kb(name)
        e = synth_model("conv", kb, ctx.budget, ctx.seed)
        out.append(Check(f"{name}: 0 entailment-closure violations", not audit_entailment_closure(e, kb)))
        out.append(Check(f"{name}: 0 weak-faithfulness violations", not audit_weak_faithfulness(e, kb)))
    return out


def _not_strong(method: str, kb_name: str, witness: str, tbox: str, abox: str) -> Callable[[Context], List[Check]]:
    def run(ctx: Context) -> List[Check]:
        kb, e = load_kb(kb_name), load_witness(witness)
        out = [Check("witness is a model", bool(is_model(e, kb)))]
        for text, origin in ((tbox, "TBox"), (abox, "ABox")):
            ax = parse_axiom(text, kb.signature)
            out.append(_verified(f"non-strong-faithful on {text}",
                                 Certificate("non-strong-faithful", method, kb, e, (ax,), {"origin": origin})))
        vs = audit_strong_faithfulness(e, kb)
        out.append(Check("strong audit reports both scopes", {v.origin for v in vs} == {"ABox", "TBox"}))
        return out
    return run


def conv_strong_check(kb: KnowledgeBase, name: str) -> List[Check]:
    """Build the conv model from the generic Horn model and audit it. With roles the
    model lives in twice as many dimensions as the Horn model has elements, so
    role KBs are left to the slow tests."""
    interp = horn_model(kb, generic_seeds=True)
    e = _fill_names(conv_from_interpretation(interp, kb.signature.individuals), kb)
    return [Check(f"{name}: generic conv model is a model", bool(is_model(e, kb))),
            Check(f"{name}: 0 strong-faithfulness violations", not audit_strong_faithfulness(e, kb))]


def case_conv_strong_ability(ctx: Context) -> List[Check]:
    return conv_strong_check(load_kb("hierarchy"), "hierarchy")


def case_helly(ctx: Context) -> List[Check]:
    """Random 2-D convex (box-shaped) models of C1 ⊓ C2 ⊓ C3 ⊓ C4 ⊑ ⊥."""
    kb = load_kb("helly")
    names = [f"C{k}" for k in range(1, 5)]
    rng = random.Random(ctx.seed)
    ms = []
    while len(ms) < ctx.samples:
        regions = {}
        for c in names:
            lo = [rng.randint(-4, 3) for _ in range(2)]
            hi = [x + rng.randint(1, 4) for x in lo]
            regions[c] = HPolyhedron.from_box(tuple(map(Fraction, lo)), tuple(map(Fraction, hi)))
        e = Embedding("conv", 2, {}, regions, {})
        if model(e, kb):
            ms.append(e)
    ok, certs = True, []
    for e in ms:
        triples = helly_triples([e.concept(c) for c in names])
        if not triples:
            ok = False
            continue
        i, j, k = triples[0]
        ax = SubClass(And(And(Name(names[i]), Name(names[j])), Name(names[k])), Bot())
        if not sat(e, ax) or alcp_entails(kb, ax):
            ok = False
        if not certs:
            certs.append(Certificate("non-strong-faithful", "conv", kb, e, (ax,), {"origin": "TBox"}))
    return [Check(f"{ctx.samples} models each satisfy a non-entailed ternary ⊑ ⊥", ok),
            _verified("non-strong-faithful (ternary)", certs[0])]


# ---------------------------------------------------------------- cones
def case_cone_faithful(ctx: Context) -> List[Check]:
    kb = load_kb("cone-alcp")
    e = synth_model("cone", kb)
    ent = audit_entailment_closure(e, kb)
    weak = audit_weak_faithfulness(e, kb)
    strong = audit_strong_faithfulness(e, kb)
    return [Check("cone model synthesized", e is not None and bool(is_model(e, kb))),
            Check("0 entailment-closure violations", not ent),
            Check("0 weak ABox-faithfulness violations", not [v for v in weak if v.origin == "ABox"]),
            Check("0 strong ABox-faithfulness violations", not [v for v in strong if v.origin == "ABox"])]


def case_cone_assertion_gap(ctx: Context) -> List[Check]:
    e = load_witness("cone-literal")
    pos = parse_axiom("Assert(A a)")
    neg = parse_axiom("Assert(Not(A) a)")
    return [Check("A(a) is false", not satisfies(e, pos)), Check("¬A(a) is false", not satisfies(e, neg))]


# ---------------------------------------------------------------- ball and box methods
def _incomplete(method: str, kb_name: str, language: Optional[str] = None) -> Callable[[Context], List[Check]]:
    def run(ctx: Context) -> List[Check]:
        kb = load_kb(kb_name)
        if language:
            kb = retag(kb, language)
        rep = probe_model(method, kb, ctx.budget, ctx.seed)
        return [Check("KB is consistent", consistent(kb)), Check("verdict refuted", rep.verdict == "refuted")] + \
            [_verified("incompleteness-argument", c) for c in rep.certificates]
    return run


def _not_separable(method: str, kb_name: str, query: str) -> Callable[[Context], List[Check]]:
    def run(ctx: Context) -> List[Check]:
        kb = load_kb(kb_name)
        q = parse_axiom(query, kb.signature)
        c = probe_separating_model(method, kb, [q], ctx.budget, ctx.seed)
        return [Check(f"{query} is not entailed", not entails(kb, q)),
                Check("no separating model within budget", c.kind == "separation-not-found"),
                Check("symbolic argument holds", c.symbolic is not None and c.symbolic.holds),
                _verified("separation-not-found", c)]
    return run


def case_box2el_abox(ctx: Context) -> List[Check]:
    return [abox_separation("box2el", "ELHO-comp-bot-nf", ctx, 10, ("A",))]


def case_boxel_vectors(ctx: Context) -> List[Check]:
    kb = retag(load_kb("example1"), "ELO-bot-nf")
    return [Check("no BoxEL model of A ⊑ ⊥, A(a)", synth_model("boxel", kb, ctx.budget, ctx.seed) is None)]


# ---------------------------------------------------------------- pattern methods
_SOUND_KBS = {
    "boxe": ("patterns-no-comp", ["Pattern(Hierarchy r s)", "Pattern(Symmetry s)", "Pattern(Exclusion r t)",
                                  "Assert(r a b)", "Assert(t b a)", "Assert(s c a)"]),
    "expr": ("patterns-full", ["Pattern(Hierarchy r s)", "Pattern(Symmetry s)", "Pattern(Composition r s t)",
                               "Assert(r a b)", "Assert(s b c)", "Assert(r c c)"]),
}


def _induced_sound(method: str) -> Callable[[Context], List[Check]]:
    def run(ctx: Context) -> List[Check]:
        lang, lines = _SOUND_KBS[method]
        kb = parse_kb(f"Language: {lang}\n" + "\n".join(lines))
        ms = _models(method, kb, ctx, 10)
        build = boxe_induced if method == "boxe" else expr_induced
        return [Check(f"{len(ms)} synthesized models", len(ms) == 10),
                Check("each induced interpretation is a classical model",
                      all(is_classical_model(build(e), kb.axioms) for e in ms))]
    return run


def case_expr_positive(ctx: Context) -> List[Check]:
    sig = load_kb("example8")
    L = [Pattern("Symmetry", ("r1",)), Pattern("Hierarchy", ("r1", "r2")), Pattern("Inversion", ("r1", "r2"))]
    return tbox_capture("expr", "patterns-full", L, ctx, sig)


def case_table4(ctx: Context) -> List[Check]:
    m = table4()
    return [Check("finite-language lattice: 0 violations", not lattice_check(m, finite=True))]


# ---------------------------------------------------------------- registry
CASES: Tuple[GalleryCase, ...] = (
    GalleryCase("example1", "ELEm model of an unsatisfiable KB", _unsound("elem", "example1", "example1"),
                "example1", "example1"),
    GalleryCase("example1-loss", "zero ELEm loss at margin 0", case_example1_loss, "example1", "example1"),
    GalleryCase("emel-unsound", "EmEL++ model of an unsatisfiable KB",
                _unsound("emel", "example1", "example1-emel"), "example1", "example1-emel"),
    GalleryCase("elbe-unsound", "ELBE model with point boxes of an unsatisfiable KB",
                _unsound("elbe", "example1", "example1-elbe"), "example1", "example1-elbe"),
    GalleryCase("example2", "convex role regions violate role disjointness", case_example2,
                "example2", "example2"),
    GalleryCase("conv-cone-sound-complete", "convex and cone models exist iff the KB is consistent",
                case_conv_sound_complete),
    GalleryCase("example3", "no BoxE model of a consistent exclusion KB", case_example3, "example3"),
    GalleryCase("example4", "Box2EL model of an unsatisfiable KB", case_example4, "example4", "fig3"),
    GalleryCase("example4-mod", "Box2EL model missing entailed assertions", case_example4_mod,
                "example4-mod", "fig3"),
    GalleryCase("example5", "every ELEm/EmEL++ model satisfies C(a) and B(a)", case_example5, "example5"),
    GalleryCase("example6", "every Box2EL model satisfies an extra existential inclusion", case_example6,
                "example6"),
    GalleryCase("example7", "every ELEm/EmEL++ model satisfies C ⊓ D ⊑ ⊥", case_example7, "example7"),
    GalleryCase("example8", "expr and BoxE: ABox- and TBox-expressive for exclusion, not KB-expressive",
                case_example8, "example8"),
    GalleryCase("helly", "2-D convex models of a 4-way disjointness satisfy a ternary one", case_helly, "helly"),
    GalleryCase("conv-induced-model", "convex model induces a classical model", case_conv_induced),
    GalleryCase("conv-entailed-weak", "convex models are entailment-closed and weakly faithful",
                case_conv_entailed_weak),
    GalleryCase("conv-not-strong", "convex model satisfying B ⊑ A and A(a)",
                _not_strong("conv", "hierarchy", "hierarchy", "SubClassOf(B A)", "Assert(A a)"),
                "hierarchy", "hierarchy"),
    GalleryCase("conv-strong-ability", "strongly faithful convex model for ELH", case_conv_strong_ability),
    GalleryCase("cone-faithful", "cone model: entailment-closed, weakly and strongly ABox-faithful",
                case_cone_faithful, "cone-alcp"),
    GalleryCase("cone-not-strong", "cone model satisfying B ⊑ A and A(a)",
                _not_strong("cone", "hierarchy-alcp", "hierarchy-cone", "SubClassOf(B A)", "Assert(A a)"),
                "hierarchy-alcp", "hierarchy-cone"),
    GalleryCase("cone-assertion-gap", "cone point in neither A nor ¬A", case_cone_assertion_gap,
                None, "cone-literal"),
    GalleryCase("elem-incomplete", "no ELEm model of ∃r.A ⊑ ⊥, ⊤ ⊑ A", _incomplete("elem", "elem-top"),
                "elem-top"),
    GalleryCase("elem-not-abox-expressive", "r(a,b), r(b,a) force r(a,a) in ELEm",
                _not_separable("elem", "elem-cycle", "Assert(r a a)"), "elem-cycle"),
    GalleryCase("elem-not-tbox-expressive", "∃r.A ⊑ ⊥ forces A ⊑ ⊥ in ELEm",
                _not_separable("elem", "elem-exists-bot", "SubClassOf(A Bot)"), "elem-exists-bot"),
    GalleryCase("boxel-vectors", "BoxEL individuals are points", case_boxel_vectors, "example1"),
    GalleryCase("boxel-incomplete", "BoxEL role maps are functional", _incomplete("boxel", "example5"),
                "example5"),
    GalleryCase("boxel-not-abox-expressive", "r(a,b), r(a,c), A(b) force A(c) in BoxEL",
                _not_separable("boxel", "boxel-abox", "Assert(A c)"), "boxel-abox"),
    GalleryCase("boxel-not-tbox-expressive", "two existentials meet under BoxEL",
                _not_separable("boxel", "boxel-tbox", "SubClassOf(A Exists(r D))"), "boxel-tbox"),
    GalleryCase("box2el-incomplete", "role inclusion empties a Box2EL head box",
                _incomplete("box2el", "box2el-incomplete"), "box2el-incomplete"),
    GalleryCase("box2el-abox-expressive", "Box2EL separates fact sets", case_box2el_abox),
    GalleryCase("boxe-induced-model", "BoxE model induces a classical model", _induced_sound("boxe")),
    GalleryCase("expr-induced-model", "ExpressivE model induces a classical model", _induced_sound("expr")),
    GalleryCase("expr-incomplete", "no ExpressivE model of the crossing exclusion KB",
                _incomplete("expr", "example2-patterns"), "example2-patterns"),
    GalleryCase("expr-positive-capture", "ExpressivE captures positive pattern sets", case_expr_positive),
    GalleryCase("table4", "published property table is lattice-consistent", case_table4),
)

BY_ID: Dict[str, GalleryCase] = {c.id: c for c in CASES}

# Every claim of the source material with a concrete instance, mapped to the case checking it.
COVERAGE: Dict[str, str] = {
    "example-1": "example1",
    "example-1/loss": "example1-loss",
    "example-2": "example2",
    "example-3": "example3",
    "example-4": "example4",
    "figure-3": "example4",
    "example-4/modified": "example4-mod",
    "example-5": "example5",
    "example-6": "example6",
    "example-7": "example7",
    "example-8": "example8",
    "example/conv-cone-sound-complete": "conv-cone-sound-complete",
    "remark/helly": "helly",
    "table-4": "table4",
    "appendix/conv/sound-complete": "conv-cone-sound-complete",
    "appendix/conv/induced-model": "conv-induced-model",
    "appendix/conv/entailment-closure": "conv-entailed-weak",
    "appendix/conv/weak-faithfulness": "conv-entailed-weak",
    "appendix/conv/no-strong-guarantee": "conv-not-strong",
    "appendix/conv/strong-ability": "conv-strong-ability",
    "appendix/cone/sound-complete": "conv-cone-sound-complete",
    "appendix/cone/induced-interpretation": "cone-assertion-gap",
    "appendix/cone/entailment-closure": "cone-faithful",
    "appendix/cone/weak-abox": "cone-faithful",
    "appendix/cone/strong-abox-ability": "cone-faithful",
    "appendix/cone/no-strong-guarantee": "cone-not-strong",
    "appendix/elem/unsound": "example1",
    "appendix/emel/unsound": "emel-unsound",
    "appendix/elbe/unsound": "elbe-unsound",
    "appendix/elem/incomplete": "elem-incomplete",
    "appendix/elem/not-abox-expressive": "elem-not-abox-expressive",
    "appendix/elem/not-tbox-expressive": "elem-not-tbox-expressive",
    "appendix/boxel/sound": "boxel-vectors",
    "appendix/boxel/incomplete": "boxel-incomplete",
    "appendix/boxel/not-abox-expressive": "boxel-not-abox-expressive",
    "appendix/boxel/not-tbox-expressive": "boxel-not-tbox-expressive",
    "appendix/box2el/unsound": "example4",
    "appendix/box2el/incomplete": "box2el-incomplete",
    "appendix/box2el/abox-expressive": "box2el-abox-expressive",
    "appendix/box2el/not-tbox-expressive": "example6",
    "appendix/boxe/sound": "boxe-induced-model",
    "appendix/boxe/incomplete": "example3",
    "appendix/boxe/abox-expressive": "example8",
    "appendix/boxe/tbox-expressive": "example8",
    "appendix/expr/sound": "expr-induced-model",
    "appendix/expr/incomplete": "expr-incomplete",
    "appendix/expr/abox-expressive": "example8",
    "appendix/expr/tbox-expressive-positive": "expr-positive-capture",
}


def list_cases() -> List[Tuple[str, str]]:
    return [(c.id, c.anchor) for c in CASES]


def select(pattern: Optional[str]) -> List[GalleryCase]:
    if not pattern:
        return list(CASES)
    return [c for c in CASES if c.id == pattern or fnmatch.fnmatchcase(c.id, pattern)]


def run_case(case: GalleryCase, ctx: Context) -> CaseResult:
    t = time.perf_counter()
    try:
        checks = case.claim(ctx)
    except KBGeomError as exc:
        checks = [Check(f"error: {type(exc).__name__}: {exc}", False)]
    return CaseResult(case.id, case.anchor, checks, time.perf_counter() - t)


def run_gallery(pattern: Optional[str] = None, seed: int = 0, budget: int = 2000,
                samples: int = UNIVERSAL_SAMPLES) -> GalleryReport:
    ctx = Context(seed, budget, samples)
    return GalleryReport([run_case(c, ctx) for c in select(pattern)])
