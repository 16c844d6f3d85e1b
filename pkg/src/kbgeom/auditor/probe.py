"""Ability probes: separating models and model synthesis with certificates."""
from __future__ import annotations

from typing import Optional, Sequence

from ..errors import PreconditionError
from ..kb.syntax import KnowledgeBase
from ..reasoner import consistent, entails
from ..semantics import Embedding, is_model
from .certificates import Certificate, Report, sat
from .symbolic import (
    boxe_exclusion_contradiction, boxel_functionality, boxel_successor_meet, box2el_empty_head, elem_cycle,
    elem_exists_bot, elem_top_radius, midpoint_conflict,
)
from .synth import repair_search, separation_construction, synth_model

INCOMPLETENESS = {
    "conv": midpoint_conflict, "expr": midpoint_conflict, "boxe": boxe_exclusion_contradiction,
    "boxel": boxel_functionality, "box2el": box2el_empty_head,
    "elem": elem_top_radius, "emel": elem_top_radius, "elbe": elem_top_radius,
}


def _falsifies_all(neg):
    def ok(e):
        return not any(sat(e, n) for n in neg)
    return ok


def search_separation(method: str, pos: KnowledgeBase, neg: Sequence, budget: int, seed: int = 0,
                      dim: int = 2) -> Optional[Embedding]:
    """A verified model of ``pos`` falsifying every axiom of ``neg``, or None."""
    accept = _falsifies_all(neg)
    e = separation_construction(method, pos, neg)
    if e is not None and is_model(e, pos) and accept(e):
        return e
    if method == "conv":
        e = synth_model("conv", pos)
        return e if e is not None and accept(e) else None
    if method == "cone":
        e = synth_model("cone", pos)
        return e if e is not None and accept(e) else None
    return repair_search(method, pos, budget, seed, dim, accept=accept)


def _symbolic_for_separation(method: str, pos: KnowledgeBase, neg: Sequence):
    """A forcing argument showing some negative axiom holds in every model of ``pos``."""
    for n in neg:
        if method in ("elem", "emel"):
            candidates = [(elem_cycle, (pos.axioms, n)), (elem_exists_bot, (pos, n))]
        elif method == "boxel":
            candidates = [(boxel_functionality, (pos, n)), (boxel_successor_meet, (pos, n))]
        else:
            candidates = []
        for check, args in candidates:
            r = check(*args)
            if r.holds:
                return r, args
    return None, ()


def probe_separating_model(method: str, pos: KnowledgeBase, neg: Sequence, budget: int = 2000,
                           seed: int = 0, dim: int = 2) -> Certificate:
    for n in neg:
        if entails(pos, n):
            raise PreconditionError(f"{n} is entailed by the positive KB")
    e = search_separation(method, pos, neg, budget, seed, dim)
    if e is not None:
        return Certificate("separation-found", method, pos, e, tuple(neg))
    sym, args = _symbolic_for_separation(method, pos, neg)
    return Certificate("separation-not-found", method, pos, None, tuple(neg),
                       {"budget": budget, "seed": seed}, sym, args)


def separation_report(method: str, pos: KnowledgeBase, neg: Sequence, budget: int = 2000,
                      seed: int = 0) -> Report:
    c = probe_separating_model(method, pos, neg, budget, seed)
    if c.kind == "separation-found":
        verdict = "witnessed"
    else:
        verdict = "refuted" if c.symbolic is not None and c.symbolic.holds else "inconclusive"
    return Report("Full-ABox" if all(_is_fact(n) for n in neg) else "Full-TBox", method, verdict, [c])


def _is_fact(ax) -> bool:
    from ..kb.syntax import is_assertion
    return is_assertion(ax)


def probe_model(method: str, kb: KnowledgeBase, budget: int = 2000, seed: int = 0) -> Report:
    """Try to build an M-model of a consistent KB; a symbolic argument turns a
    failed search into a refutation of completeness."""
    if not consistent(kb):
        raise PreconditionError("completeness probes need a consistent KB")
    e = synth_model(method, kb, budget, seed)
    info = {"budget": budget, "seed": seed, "model_found": e is not None}
    if e is not None:
        c = Certificate("separation-found", method, kb, e, ())
        return Report("Completeness", method, "witnessed", [c], info)
    check = INCOMPLETENESS.get(method)
    sym = check(kb) if check else None
    if sym is not None and sym.holds:
        c = Certificate("incompleteness-argument", method, kb, None, (), {"budget": budget, "seed": seed},
                        sym, (kb,))
        return Report("Completeness", method, "refuted", [c], info)
    return Report("Completeness", method, "inconclusive", [], info)
