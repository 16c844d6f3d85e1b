"""EL++ completion (CR1-CR6, CR10, CR11) for ELO⊥ / ELHO(∘)⊥ normal forms.

Every entailment question is reduced to a subsumption between basic concepts
of a slightly extended KB (fresh names, fresh individuals), which the
completion algorithm decides soundly and completely.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Set, Tuple

from ..errors import LanguageError
from ..kb.language import NOMINAL_TAGS, nf_shape
from ..kb.syntax import (
    BOT, TOP, Bot, Comp, ConceptAssertion, Exists, KnowledgeBase, Name, Nominal, RName,
    RoleAssertion, SubClass, SubRole, Top,
)
from ..kb.transform import assertion_to_nominal


class Saturation:
    """Result of running the completion rules to a fixpoint."""

    def __init__(self, axioms: Tuple, individuals: Tuple[str, ...]):
        self.sub: Dict = {}      # A -> [B]      for A ⊑ B
        self.conj: Dict = {}     # A1 -> [(A2, B)] for A1⊓A2 ⊑ B (both orders)
        self.exr: Dict = {}      # A -> [(r, B)] for A ⊑ ∃r.B
        self.exl: Dict = {}      # (r, A) -> [B] for ∃r.A ⊑ B
        self.rsub: Dict = {}     # r -> [s]
        self.comp: Dict = {}     # (r1, r2) -> [s]
        nodes: Set = {TOP, BOT} | {Nominal(a) for a in individuals}
        for ax in axioms:
            if isinstance(ax, SubRole):
                if isinstance(ax.sub, Comp):
                    self.comp.setdefault((ax.sub.first.name, ax.sub.second.name), []).append(ax.sup.name)
                else:
                    self.rsub.setdefault(ax.sub.name, []).append(ax.sup.name)
                continue
            shape = nf_shape(ax, inverses=False, nominals=True)
            if shape is None:
                raise LanguageError(f"EL completion cannot handle {ax}")
            l, r = ax.lhs, ax.rhs
            if isinstance(l, Bot) or isinstance(r, Top):
                continue
            if shape == "sub":
                self.sub.setdefault(l, []).append(r)
                nodes |= {l, r}
            elif shape == "conj":
                self.conj.setdefault(l.left, []).append((l.right, r))
                self.conj.setdefault(l.right, []).append((l.left, r))
                nodes |= {l.left, l.right, r}
            elif shape == "exl":
                self.exl.setdefault((l.role.name, l.filler), []).append(r)
                nodes |= {l.filler, r}
            else:
                self.exr.setdefault(l, []).append((r.role.name, r.filler))
                nodes |= {l, r.filler}
        self.nodes = sorted(nodes, key=str)
        self._run()

    def _run(self):
        S: Dict = {n: {n, TOP} for n in self.nodes}
        S[BOT].add(BOT)
        R: Dict[str, Set] = {}
        succ: Dict = {}   # node -> set of (r, node)
        pred: Dict = {}   # node -> set of (r, node)
        work = [(n, c) for n in self.nodes for c in S[n]]

        def add_s(n, c):
            if c not in S[n]:
                S[n].add(c)
                work.append((n, c))

        def add_r(r, x, y):
            if (x, y) in R.setdefault(r, set()):
                return
            R[r].add((x, y))
            succ.setdefault(x, set()).add((r, y))
            pred.setdefault(y, set()).add((r, x))
            rwork.append((r, x, y))

        rwork = []
        changed = True
        while changed:
            changed = False
            while work or rwork:
                while work:
                    n, c = work.pop()
                    for d in self.sub.get(c, ()):
                        add_s(n, d)
                    for other, d in self.conj.get(c, ()):
                        if other in S[n]:
                            add_s(n, d)
                    for r, d in self.exr.get(c, ()):
                        add_r(r, n, d)
                    # CR4 / CR5 from the successor side: c newly in S(n)
                    for r, x in list(pred.get(n, ())):
                        for e in self.exl.get((r, c), ()):
                            add_s(x, e)
                        if c == BOT:
                            add_s(x, BOT)
                while rwork:
                    r, x, y = rwork.pop()
                    for c in list(S[y]):
                        for e in self.exl.get((r, c), ()):
                            add_s(x, e)
                    if BOT in S[y]:
                        add_s(x, BOT)
                    for s in self.rsub.get(r, ()):
                        add_r(s, x, y)
                    for (r1, r2), sups in self.comp.items():
                        if r1 == r:
                            for r2_, z in list(succ.get(y, ())):
                                if r2_ == r2:
                                    for s in sups:
                                        add_r(s, x, z)
                        if r2 == r:
                            for r1_, w in list(pred.get(x, ())):
                                if r1_ == r1:
                                    for s in sups:
                                        add_r(s, w, y)
            # CR6: nominal merging along ~> reachability
            for n in self.nodes:
                noms = [c for c in S[n] if isinstance(c, Nominal)]
                if not noms:
                    continue
                reach = self._reach(n, succ)
                for m in self.nodes:
                    if m is n or m not in reach:
                        continue
                    if any(c in S[m] for c in noms) and not S[m] <= S[n]:
                        for c in list(S[m]):
                            add_s(n, c)
                        changed = True
        self.S = {k: frozenset(v) for k, v in S.items()}
        self.R = {k: frozenset(v) for k, v in R.items()}

    def _reach(self, start, succ):
        seeds = [start] + [n for n in self.nodes if isinstance(n, Nominal)]
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            x = stack.pop()
            for _, y in succ.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def consistent(self) -> bool:
        if BOT in self.S[TOP]:
            return False
        return not any(BOT in v for k, v in self.S.items() if isinstance(k, Nominal))

    def subsumed(self, a, b) -> bool:
        """Decide a ⊑ b for basic concepts present as nodes."""
        if isinstance(a, Bot) or isinstance(b, Top):
            return True
        s = self.S.get(a)
        if s is None:
            s = self.S[TOP] | {a}
        return BOT in s or b in s


@lru_cache(maxsize=4096)
def saturate(axioms: Tuple, individuals: Tuple[str, ...]) -> Saturation:
    return Saturation(axioms, individuals)


def _prep(kb: KnowledgeBase) -> Tuple[Tuple, Tuple[str, ...]]:
    if kb.language not in NOMINAL_TAGS:
        raise LanguageError(f"EL reasoner expects an ELO/ELHO tag, got {kb.language}")
    axioms = tuple(assertion_to_nominal(a) for a in kb.axioms)
    return axioms, kb.signature.individuals


def el_consistent(kb: KnowledgeBase) -> bool:
    axioms, inds = _prep(kb)
    return saturate(axioms, inds).consistent()


def _fresh(base: str, taken) -> str:
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def el_entails(kb: KnowledgeBase, ax) -> bool:
    axioms, inds = _prep(kb)
    if not saturate(axioms, inds).consistent():
        return True
    taken = set(kb.signature.concepts) | set(kb.signature.individuals) | set(kb.signature.roles)
    x = Name(_fresh("_Q", taken))
    if isinstance(ax, (ConceptAssertion, RoleAssertion)):
        ax = assertion_to_nominal(ax)
    if isinstance(ax, SubRole):
        # r ⊑ s  iff  K + {x}⊑∃r.{y}  entails  {x}⊑∃s.{y}, fresh x, y (same idea for chains)
        i0 = _fresh("_i", taken)
        i1 = _fresh("_j", taken)
        if isinstance(ax.sub, Comp):
            i2 = _fresh("_k", taken)
            extra = (SubClass(Nominal(i0), Exists(RName(ax.sub.first.name), Nominal(i1))),
                     SubClass(Nominal(i1), Exists(RName(ax.sub.second.name), Nominal(i2))))
            goal = SubClass(Nominal(i0), Exists(ax.sup, Nominal(i2)))
            new_inds = (i0, i1, i2)
        else:
            extra = (SubClass(Nominal(i0), Exists(ax.sub, Nominal(i1))),)
            goal = SubClass(Nominal(i0), Exists(ax.sup, Nominal(i1)))
            new_inds = (i0, i1)
        ext = KnowledgeBase(kb.signature.extend(individuals=new_inds), axioms + extra, (), kb.language)
        return el_entails(ext, goal)
    shape = nf_shape(ax, inverses=False, nominals=True)
    if shape is None:
        raise LanguageError(f"EL reasoner cannot decide {ax}")
    # L ⊑ R iff K + L(i) entails R(i) for a fresh individual i. Asking about a
    # fresh individual rather than a bare concept node matters with nominals:
    # nominal merging only propagates from contexts known to be non-empty, and
    # a concept node standing for L is not, so facts that L's instances would
    # force on some {a} never reach a.
    l, r = ax.lhs, ax.rhs
    if isinstance(l, Bot) or isinstance(r, Top):
        return True
    i = Nominal(_fresh("_i", taken))
    if shape == "conj":
        extra = [SubClass(i, l.left), SubClass(i, l.right)]
    elif isinstance(l, Top):
        extra = []
    else:
        extra = [SubClass(i, l)]
    goal = r
    if shape == "exr":
        if isinstance(r.filler, Bot):
            goal = BOT
        else:
            extra.append(SubClass(Exists(r.role, r.filler), x))
            goal = x
    sat = saturate(axioms + tuple(extra), inds + (i.ind,))
    return not sat.consistent() or goal in sat.S[i]
