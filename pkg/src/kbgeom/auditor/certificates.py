"""Self-checking certificates and the report object shared by the CLI and gallery."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..errors import LanguageError
from ..kb.parser import ser_axiom, serialize_kb
from ..kb.syntax import KnowledgeBase, SubClass
from ..reasoner import consistent, entails
from ..semantics import Embedding, embedding_to_dict, satisfies
from ..semantics.satisfy import _conv_concept
from .symbolic import SymbolicResult, run_check

KINDS = (
    "unsoundness-witness", "incompleteness-argument", "non-entailed-model", "non-weak-faithful",
    "non-strong-faithful", "separation-found", "separation-not-found",
)
VERDICTS = ("refuted", "witnessed", "inconclusive")


def axiom_text(ax) -> str:
    try:
        return ser_axiom(ax)
    except TypeError:
        return str(ax)


def sat(e: Embedding, ax) -> bool:
    """satisfies, extended to conv inclusions between arbitrary EL concepts
    (the Helly axioms are n-ary conjunctions, outside normal form)."""
    try:
        return bool(satisfies(e, ax))
    except LanguageError:
        if e.method == "conv" and isinstance(ax, SubClass):
            return _conv_concept(e, ax.lhs, 10_000).subset(_conv_concept(e, ax.rhs, 10_000))
        raise


def model(e: Embedding, kb: KnowledgeBase) -> bool:
    return all(sat(e, ax) for ax in kb.axioms)


@dataclass
class Certificate:
    kind: str
    method: str
    kb: Optional[KnowledgeBase] = None
    embedding: Optional[Embedding] = None
    axioms: Tuple = ()
    detail: Dict[str, Any] = field(default_factory=dict)
    symbolic: Optional[SymbolicResult] = None
    symbolic_args: Tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind}")

    # ------------------------------------------------------------ checking
    def _symbolic_ok(self) -> bool:
        if self.symbolic is None:
            return True
        return run_check(self.symbolic.name, *self.symbolic_args).holds

    def verify(self) -> bool:
        """Re-run every check the certificate rests on. A failed search is only
        replayed for incompleteness arguments when ``detail["replay"]`` is set;
        the symbolic argument is what makes them conclusive."""
        e, kb, k = self.embedding, self.kb, self.kind
        if k == "unsoundness-witness":
            return model(e, kb) and not consistent(kb)
        if k == "incompleteness-argument":
            if not consistent(kb):
                return False
            if self.detail.get("replay"):
                from .synth import synth_model
                if synth_model(self.method, kb, self.detail["budget"], self.detail.get("seed", 0)) is not None:
                    return False
            return self.symbolic is not None and self._symbolic_ok()
        if k == "non-entailed-model":
            (ax,) = self.axioms
            return model(e, kb) and entails(kb, ax) and not sat(e, ax)
        if k == "non-weak-faithful":
            return model(e, kb) and all(sat(e, ax) for ax in self.axioms) \
                and not consistent(kb.with_axioms(self.axioms))
        if k == "non-strong-faithful":
            (ax,) = self.axioms
            return model(e, kb) and sat(e, ax) and not entails(kb, ax)
        if k == "separation-found":
            return model(e, kb) and not any(sat(e, ax) for ax in self.axioms)
        # separation-not-found: without a symbolic argument the failed search is
        # the only evidence, so it is replayed with the recorded budget and seed
        if self.symbolic is None or self.detail.get("replay"):
            from .probe import search_separation
            again = search_separation(self.method, kb, self.axioms, self.detail["budget"],
                                      self.detail.get("seed", 0))
            if again is not None:
                return False
        return self._symbolic_ok()

    # ------------------------------------------------------------ output
    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind, "method": self.method}
        if self.kb is not None:
            out["kb"] = serialize_kb(self.kb)
        if self.embedding is not None:
            out["embedding"] = embedding_to_dict(self.embedding)
        if self.axioms:
            out["axioms"] = [axiom_text(a) for a in self.axioms]
        if self.detail:
            out["detail"] = {k: self.detail[k] for k in sorted(self.detail)}
        if self.symbolic is not None:
            out["symbolic"] = self.symbolic.to_dict()
        return out

    def summary(self) -> str:
        ax = ", ".join(axiom_text(a) for a in self.axioms)
        tail = f" [{ax}]" if ax else ""
        origin = self.detail.get("origin")
        return f"{self.kind} ({self.method}){tail}" + (f" origin={origin}" if origin else "")


@dataclass
class Report:
    property: str
    method: str
    verdict: str
    certificates: List[Certificate] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict}")

    def to_dict(self) -> Dict[str, Any]:
        out = {"property": self.property, "method": self.method, "verdict": self.verdict,
               "certificates": [c.to_dict() for c in self.certificates]}
        if self.info:
            out["info"] = {k: self.info[k] for k in sorted(self.info)}
        return out

    def lines(self) -> List[str]:
        out = [f"{self.property} [{self.method}]: {self.verdict}"]
        out += ["  " + c.summary() for c in self.certificates]
        return out
