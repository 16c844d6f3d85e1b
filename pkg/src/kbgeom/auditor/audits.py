"""Per-instance audits of entailment closure, weak and strong faithfulness,
soundness and pattern capture.

Guarantees are refuted by a single violating model; an instance without
violations only witnesses the ability for that KB.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterable, List, Optional, Sequence

from ..errors import PreconditionError, ResourceCapError, UnsupportedFragment
from ..kb.language import PATTERN_TAGS, canonical_tag, enumerate_language
from ..kb.syntax import KnowledgeBase, Pattern, is_assertion
from ..reasoner import consistent, consistent_with, entails, pattern_entails
from ..semantics import Embedding
from .certificates import Certificate, Report, sat

DEFAULT_ENUM_CAP = 100_000


@dataclass(frozen=True)
class Violation:
    axiom: object
    origin: str  # "ABox" or "TBox"

    def to_dict(self):
        from .certificates import axiom_text
        return {"axiom": axiom_text(self.axiom), "origin": self.origin}


def origin(ax) -> str:
    return "ABox" if is_assertion(ax) else "TBox"


def language(kb: KnowledgeBase, tag: Optional[str], cap: int) -> List:
    out = list(islice(enumerate_language(kb.signature, canonical_tag(tag or kb.language)), cap + 1))
    if len(out) > cap:
        raise ResourceCapError(f"language has more than {cap} axioms")
    return out


def _sat_or_none(e: Embedding, ax) -> Optional[bool]:
    try:
        return sat(e, ax)
    except UnsupportedFragment:
        return None


def _pre(e: Embedding, kb: KnowledgeBase) -> None:
    from .certificates import model
    if not model(e, kb):
        raise PreconditionError("the embedding is not a model of the KB")
    if not consistent(kb):
        raise PreconditionError("the KB is inconsistent")


def audit_entailment_closure(e: Embedding, kb: KnowledgeBase, tag: Optional[str] = None,
                             cap: int = DEFAULT_ENUM_CAP) -> List[Violation]:
    _pre(e, kb)
    out = []
    for ax in language(kb, tag, cap):
        if entails(kb, ax) and _sat_or_none(e, ax) is False:
            out.append(Violation(ax, origin(ax)))
    return out


def audit_weak_faithfulness(e: Embedding, kb: KnowledgeBase, tag: Optional[str] = None,
                            cap: int = DEFAULT_ENUM_CAP) -> List[Violation]:
    _pre(e, kb)
    out = []
    for ax in language(kb, tag, cap):
        if _sat_or_none(e, ax) and not consistent_with(kb, ax):
            out.append(Violation(ax, origin(ax)))
    return out


def audit_strong_faithfulness(e: Embedding, kb: KnowledgeBase, tag: Optional[str] = None,
                              cap: int = DEFAULT_ENUM_CAP) -> List[Violation]:
    _pre(e, kb)
    out = []
    for ax in language(kb, tag, cap):
        if _sat_or_none(e, ax) and not entails(kb, ax):
            out.append(Violation(ax, origin(ax)))
    return out


def in_scope(vs: Iterable[Violation], scope: str) -> List[Violation]:
    return [v for v in vs if scope == "KB" or v.origin == scope]


_AUDITS = {
    "entailed": (audit_entailment_closure, "non-entailed-model", "Entailed"),
    "weak-faithful": (audit_weak_faithfulness, "non-weak-faithful", "Weak"),
    "strong-faithful": (audit_strong_faithfulness, "non-strong-faithful", "Strong"),
}


def audit_report(kind: str, method: str, e: Embedding, kb: KnowledgeBase, scope: str = "KB",
                 tag: Optional[str] = None, cap: int = DEFAULT_ENUM_CAP) -> Report:
    """Run one audit and wrap each violation into a certificate."""
    fn, cert_kind, word = _AUDITS[kind]
    vs = in_scope(fn(e, kb, tag, cap), scope)
    certs = [Certificate(cert_kind, method, kb, e, (v.axiom,), {"origin": v.origin}) for v in vs]
    prop = f"forall-{word}-{scope}"
    return Report(prop, method, "refuted" if certs else "witnessed", certs, {"violations": len(certs)})


def audit_soundness_instance(method: str, e: Embedding, kb: KnowledgeBase) -> Report:
    from .certificates import model
    if not model(e, kb):
        raise PreconditionError("the embedding is not a model of the KB")
    try:
        ok = consistent(kb)
    except ResourceCapError as exc:
        return Report("Soundness", method, "inconclusive", [], {"reason": str(exc)})
    if ok:
        return Report("Soundness", method, "inconclusive", [], {"kb": "consistent"})
    return Report("Soundness", method, "refuted", [Certificate("unsoundness-witness", method, kb, e)])


def capture_check(e: Embedding, patterns: Sequence[Pattern], tag: str, language: Optional[Sequence] = None) -> dict:
    """Exactly: every pattern of ``patterns`` holds in ``e``. Exclusively: every
    pattern of the language that holds in ``e`` follows from ``patterns``. The
    language defaults to all patterns of ``tag`` over the roles involved."""
    if canonical_tag(tag) not in PATTERN_TAGS:
        raise PreconditionError(f"{tag} is not a pattern language")
    if language is None:
        from ..kb.syntax import Signature
        roles = tuple(dict.fromkeys(list(e.roles) + [r for p in patterns for r in p.roles]))
        language = [p for p in enumerate_language(Signature((), roles, ()), tag) if isinstance(p, Pattern)]
    exactly = all(sat(e, p) for p in patterns)
    bad = [phi for phi in language if _sat_or_none(e, phi) and not pattern_entails(patterns, phi)]
    return {"exactly": exactly, "exclusively": not bad, "uncaptured": bad}
