"""Symbolic impossibility and forcing arguments, replayed step by step.

Each check inspects a KB (and sometimes a query axiom), finds the axioms the
argument needs, and re-derives the conclusion with exact arithmetic: small
linear systems are shown empty with Fourier-Motzkin, chains of inclusions are
followed syntactically. A check returns a ``SymbolicResult`` whose ``steps``
record what was derived; ``holds`` is False when the premises are missing or a
step fails.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple

from ..geometry import HPolyhedron, concat
from ..kb.language import nf_shape
from ..kb.syntax import (
    And, Bot, Comp, ConceptAssertion, Exists, KnowledgeBase, Name, NegRole, Nominal, Pattern, RName,
    RoleAssertion, SubClass, SubRole, Top,
)

F0, F1 = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class SymbolicResult:
    name: str
    holds: bool
    steps: Tuple[str, ...] = ()
    derived: Tuple = field(default=(), compare=False)

    def to_dict(self):
        return {"check": self.name, "holds": self.holds, "steps": list(self.steps)}


# ---------------------------------------------------------------- helpers
def facts(axioms) -> Tuple[List[Tuple[str, str, str]], List[Tuple[str, str]]]:
    """Role facts (r, a, b) and concept facts (A, a), from assertions or their nominal form."""
    rs, cs = [], []
    for ax in axioms:
        if isinstance(ax, RoleAssertion):
            rs.append((ax.role, ax.a, ax.b))
        elif isinstance(ax, ConceptAssertion) and isinstance(ax.concept, Name):
            cs.append((ax.concept.name, ax.ind))
        elif isinstance(ax, SubClass) and isinstance(ax.lhs, Nominal):
            r = ax.rhs
            if isinstance(r, Name):
                cs.append((r.name, ax.lhs.ind))
            elif isinstance(r, Exists) and isinstance(r.role, RName) and isinstance(r.filler, Nominal):
                rs.append((r.role.name, ax.lhs.ind, r.filler.ind))
    return rs, cs


def _exclusions(kb: KnowledgeBase) -> List[Tuple[str, str]]:
    out = []
    for ax in kb.tbox:
        if isinstance(ax, Pattern) and ax.kind == "Exclusion":
            out.append(tuple(ax.roles))
        elif (isinstance(ax, SubRole) and isinstance(ax.sub, RName) and isinstance(ax.sup, NegRole)
              and isinstance(ax.sup.role, RName)):
            out.append((ax.sub.name, ax.sup.role.name))
    return out


def _disjoint_pairs(kb: KnowledgeBase) -> set:
    out = set()
    for ax in kb.tbox:
        if isinstance(ax, SubClass) and isinstance(ax.rhs, Bot) and isinstance(ax.lhs, And):
            l, r = ax.lhs.left, ax.lhs.right
            if isinstance(l, Name) and isinstance(r, Name):
                out.add(frozenset((l.name, r.name)))
    return out


def _exl(kb: KnowledgeBase) -> List[Tuple[str, object, object]]:
    """∃r.X ⊑ Y axioms as (r, X, Y)."""
    out = []
    for ax in kb.tbox:
        if isinstance(ax, SubClass) and nf_shape(ax) == "exl" and isinstance(ax.lhs.role, RName):
            out.append((ax.lhs.role.name, ax.lhs.filler, ax.rhs))
    return out


def _exr(kb: KnowledgeBase) -> List[Tuple[object, str, object]]:
    out = []
    for ax in kb.tbox:
        if isinstance(ax, SubClass) and nf_shape(ax) == "exr" and isinstance(ax.rhs.role, RName):
            out.append((ax.lhs, ax.rhs.role.name, ax.rhs.filler))
    return out


def _row(n: int, coeffs: Dict[int, Fraction], strict: bool = False, bound=F0):
    v = [F0] * n
    for k, c in coeffs.items():
        v[k] += Fraction(c)
    return (tuple(v), strict, Fraction(bound))


# ---------------------------------------------------------------- convex midpoint
class _Lin:
    """A point written as a rational combination of named vectors."""

    def __init__(self, terms: Dict[str, Fraction]):
        self.terms = {k: v for k, v in terms.items() if v != 0}

    def __add__(self, o):
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, F0) + v
        return _Lin(t)

    def scale(self, c):
        return _Lin({k: v * c for k, v in self.terms.items()})

    def __eq__(self, o):
        return self.terms == o.terms


def _pair(x: str, y: str) -> Tuple[_Lin, _Lin]:
    return _Lin({x: F1}), _Lin({y: F1})


def _mid(p, q):
    h = Fraction(1, 2)
    return p[0].scale(h) + q[0].scale(h), p[1].scale(h) + q[1].scale(h)


def find_midpoint_instance(kb: KnowledgeBase):
    """(r1, r2, a, b) with r1 ⊑ ¬r2 (either way round), r1(a,b), r1(b,a), r2(a,a), r2(b,b)."""
    rf, _ = facts(kb.abox)
    fs = set(rf)
    for p, q in _exclusions(kb):
        for r1, r2 in ((p, q), (q, p)):
            for (r, a, b) in sorted(fs):
                if r == r1 and a != b and (r1, b, a) in fs and (r2, a, a) in fs and (r2, b, b) in fs:
                    return r1, r2, a, b
    return None


def midpoint_conflict(kb: KnowledgeBase, e=None) -> SymbolicResult:
    """Convex role regions cannot keep r1 and r2 apart once r1 holds on (a,b),(b,a)
    and r2 on (a,a),(b,b): both midpoints equal v ⊕ v with v = (E(a)+E(b))/2."""
    inst = find_midpoint_instance(kb)
    if inst is None:
        return SymbolicResult("midpoint", False, ("no disjointness with the four crossing facts",))
    r1, r2, a, b = inst
    m1 = _mid(_pair(a, b), _pair(b, a))
    m2 = _mid(_pair(a, a), _pair(b, b))
    v = _Lin({a: Fraction(1, 2), b: Fraction(1, 2)})
    steps = [f"{r1} ⊑ ¬{r2} with {r1}({a},{b}), {r1}({b},{a}), {r2}({a},{a}), {r2}({b},{b})",
             f"midpoint of E({a})⊕E({b}) and E({b})⊕E({a}) lies in E({r1}) by convexity",
             f"midpoint of E({a})⊕E({a}) and E({b})⊕E({b}) lies in E({r2}) by convexity"]
    ok = m1 == m2 and m1[0] == v and m1[1] == v
    steps.append("both midpoints equal v⊕v with v = (E(a)+E(b))/2" if ok else "midpoints differ")
    derived = ()
    if ok and e is not None:
        pa, pb = e.ind(a), e.ind(b)
        vv = tuple((x + y) / 2 for x, y in zip(pa, pb))
        if e.method == "conv":
            in1 = e.role(r1).contains(concat(vv, vv))
            in2 = e.role(r2).contains(concat(vv, vv))
        else:
            in1 = e.role(r1).contains(vv, vv)
            in2 = e.role(r2).contains(vv, vv)
        steps.append(f"concrete v = {tuple(str(x) for x in vv)}: in E({r1}) {in1}, in E({r2}) {in2}")
        ok = bool(in1 and in2)
        derived = (vv,)
    return SymbolicResult("midpoint", ok, tuple(steps), derived)


# ---------------------------------------------------------------- BoxE exclusion
def boxe_exclusion_contradiction(kb: KnowledgeBase) -> SymbolicResult:
    """No BoxE model keeps the head boxes or the tail boxes of an exclusion pair apart.

    Each coordinate is independent, so one coordinate suffices: for each side
    and each order of the separated boxes the facts give a 1-D linear system,
    and all four systems are shown empty."""
    rf, _ = facts(kb.abox)
    for r, s in _exclusions(kb):
        R = [(a, b) for (q, a, b) in rf if q == r]
        S = [(a, b) for (q, a, b) in rf if q == s]
        if not R or not S:
            continue
        inds = sorted({x for p in R + S for x in p})
        idx = {}
        for a in inds:
            idx["e_" + a] = len(idx)
            idx["b_" + a] = len(idx)
        for nm in ("l_r", "u_r", "l_s", "u_s"):
            idx[nm] = len(idx)
        n = len(idx)
        steps = [f"exclusion {r} ⊑ ¬{s}; {r}-facts {R}; {s}-facts {S}"]
        all_empty = True
        for side in ("head", "tail"):
            for first, second in (("r", "s"), ("s", "r")):
                rows = []
                for tag, pairs in (("r", R), ("s", S)):
                    for a, b in pairs:
                        # head point e_a + b_b, tail point e_b + b_a
                        x, y = (a, b) if side == "head" else (b, a)
                        pt = {idx["e_" + x]: F1, idx["b_" + y]: F1}
                        rows.append(_row(n, {**{k: -v for k, v in pt.items()}, idx["l_" + tag]: F1}))
                        rows.append(_row(n, {**pt, idx["u_" + tag]: -F1}))
                rows.append(_row(n, {idx["u_" + first]: F1, idx["l_" + second]: -F1}, strict=True))
                empty = HPolyhedron.make(n, rows).is_empty()
                steps.append(f"{side} boxes, u_{first}[j] < l_{second}[j]: system "
                             + ("infeasible" if empty else "feasible"))
                all_empty = all_empty and empty
        if all_empty:
            steps.append("every way of separating the boxes is infeasible, so no BoxE model exists")
            return SymbolicResult("boxe-exclusion", True, tuple(steps))
        return SymbolicResult("boxe-exclusion", False, tuple(steps))
    return SymbolicResult("boxe-exclusion", False, ("no exclusion pair with facts on both roles",))


# ---------------------------------------------------------------- BoxEL functionality
def _classes(rf) -> Dict[str, str]:
    """Congruence closure of r(a,b), r(a,c) ⇒ b = c."""
    parent: Dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        succ: Dict[Tuple[str, str], str] = {}
        for r, a, b in rf:
            key = (r, find(a))
            if key in succ and find(succ[key]) != find(b):
                parent[find(b)] = find(succ[key])
                changed = True
            else:
                succ.setdefault(key, b)
    for r, a, b in rf:
        find(a), find(b)
    return {x: find(x) for x in parent}


def boxel_functionality(kb: KnowledgeBase, query=None) -> SymbolicResult:
    """BoxEL maps roles to functions, so r(a,b), r(a,c) force E(b) = E(c).

    Without ``query``: reports a conflict when one point must lie in two boxes
    declared disjoint. With a concept fact ``query`` A(x): reports it forced
    when some y with E(y) = E(x) carries A."""
    rf, cf = facts(kb.abox)
    cls = _classes(rf)
    groups: Dict[str, set] = {}
    for x, c in cls.items():
        groups.setdefault(c, set()).add(x)
    merged = sorted(sorted(g) for g in groups.values() if len(g) > 1)
    steps = [f"individuals sharing one point: {merged}"]
    labels: Dict[str, set] = {}
    for A, x in cf:
        labels.setdefault(cls.get(x, x), set()).add(A)
    if query is None:
        for c, labs in sorted(labels.items()):
            for p in _disjoint_pairs(kb):
                if p <= labs:
                    steps.append(f"point of {sorted(groups.get(c, {c}))} lies in disjoint boxes {sorted(p)}")
                    return SymbolicResult("boxel-functional", True, tuple(steps))
        return SymbolicResult("boxel-functional", False, tuple(steps + ["no conflict"]))
    qf, qc = facts([query])
    if qc:
        A, x = qc[0]
        if A in labels.get(cls.get(x, x), set()):
            steps.append(f"{A}({x}) holds because E({x}) equals a point already inside Box({A})")
            return SymbolicResult("boxel-functional", True, tuple(steps))
    if qf:
        r, a, b = qf[0]
        for r2, a2, b2 in rf:
            if r2 == r and cls.get(a2, a2) == cls.get(a, a) and cls.get(b2, b2) == cls.get(b, b):
                steps.append(f"{r}({a},{b}) holds because T_{r}(E({a})) = E({b2}) = E({b})")
                return SymbolicResult("boxel-functional", True, tuple(steps))
    return SymbolicResult("boxel-functional", False, tuple(steps + ["query not forced"]))


def boxel_successor_meet(kb: KnowledgeBase, query) -> SymbolicResult:
    """A ⊑ ∃r.B, A ⊑ ∃r.C, B ⊓ C ⊑ D force A ⊑ ∃r.D under BoxEL: the single image
    T_r(Box(A)) sits inside Box(B) ∩ Box(C) ⊆ Box(D)."""
    if not (isinstance(query, SubClass) and nf_shape(query) == "exr"):
        return SymbolicResult("boxel-successor-meet", False, ("query is not A ⊑ ∃r.D",))
    A, r, D = query.lhs, query.rhs.role.name, query.rhs.filler
    fillers = [f for (l, rr, f) in _exr(kb) if l == A and rr == r]
    for f1, f2 in combinations(fillers, 2):
        for ax in kb.tbox:
            if (isinstance(ax, SubClass) and isinstance(ax.lhs, And) and ax.rhs == D
                    and {ax.lhs.left, ax.lhs.right} == {f1, f2}):
                return SymbolicResult("boxel-successor-meet", True, (
                    f"T_{r}(Box({A})) ⊆ Box({f1}) and ⊆ Box({f2})",
                    f"Box({f1}) ∩ Box({f2}) ⊆ Box({D})", f"hence {query}"))
    return SymbolicResult("boxel-successor-meet", False, ("premises not found",))


# ---------------------------------------------------------------- ELEm arguments
def elem_nominal_collapse(kb: KnowledgeBase) -> SymbolicResult:
    """Individuals whose ball must be empty: x with r-successors y, z carrying
    disjoint concepts. Ball({x}) + v ⊆ Ball(P) ∩ Ball(Q) = ∅."""
    rf, cf = facts(kb.axioms)
    lab: Dict[str, set] = {}
    for A, x in cf:
        lab.setdefault(x, set()).add(A)
    dis = _disjoint_pairs(kb)
    empty, steps = [], []
    for x in sorted({a for _, a, _ in rf}):
        for r in sorted({q for q, a, _ in rf if a == x}):
            succ = sorted({b for q, a, b in rf if q == r and a == x})
            for y, z in combinations(succ, 2):
                for p in dis:
                    P, Q = sorted(p)
                    if (P in lab.get(y, ()) and Q in lab.get(z, ())) or (Q in lab.get(y, ()) and P in lab.get(z, ())):
                        steps += [f"Ball({{{x}}}) + v_{r} ⊆ Ball({{{y}}}) and ⊆ Ball({{{z}}})",
                                  f"Ball({{{y}}}) ⊆ Ball({P}) or Ball({Q}), Ball({{{z}}}) the other",
                                  f"Ball({P}) ∩ Ball({Q}) = ∅, so Ball({{{x}}}) = ∅"]
                        empty.append(x)
    empty = sorted(set(empty))
    if empty:
        steps.append(f"empty nominals {empty}: every assertion about them is satisfied")
    return SymbolicResult("elem-nominal-collapse", bool(empty), tuple(steps), tuple(empty))


def elem_translation_meet(kb: KnowledgeBase) -> SymbolicResult:
    """∃r.X ⊑ P, ∃r.Y ⊑ Q, P ⊓ Q ⊑ ⊥ force X ⊓ Y ⊑ ⊥ for translation methods:
    (Ball(X) ∩ Ball(Y)) − v ⊆ Ball(P) ∩ Ball(Q) = ∅ and translation is a bijection."""
    ex = _exl(kb)
    dis = _disjoint_pairs(kb)
    derived, steps = [], []
    for (r1, X, P), (r2, Y, Q) in combinations(ex, 2):
        if r1 == r2 and isinstance(P, Name) and isinstance(Q, Name) and frozenset((P.name, Q.name)) in dis:
            ax = SubClass(And(X, Y), Bot())
            derived.append(ax)
            steps += [f"Ball({X}) − v_{r1} ⊆ Ball({P}), Ball({Y}) − v_{r1} ⊆ Ball({Q})",
                      f"Ball({P}) ∩ Ball({Q}) = ∅, so Ball({X}) ∩ Ball({Y}) = ∅: {ax}"]
    return SymbolicResult("translation-meet", bool(derived), tuple(steps), tuple(derived))


def elem_cycle(pos_axioms, query) -> SymbolicResult:
    """r(a,b), r(b,a) force r(a,a) under ELEm: either Ball({a}) is empty, or the
    radii coincide and then c_a + v = c_b, c_b + v = c_a give v = 0."""
    rf, _ = facts(pos_axioms)
    qf, _ = facts([query])
    if not qf:
        return SymbolicResult("elem-cycle", False, ("query is not a role fact",))
    r, a, a2 = qf[0]
    if a != a2:
        return SymbolicResult("elem-cycle", False, ("query is not a self-loop",))
    bs = [b for (q, x, b) in rf if q == r and x == a and (r, b, a) in rf]
    if not bs:
        return SymbolicResult("elem-cycle", False, ("no two-cycle through the individual",))
    b = bs[0]
    steps = [f"{{{a}}} ⊑ ∃{r}.{{{b}}} and {{{b}}} ⊑ ∃{r}.{{{a}}}",
             f"case Ball({{{a}}}) = ∅: {{{a}}} ⊑ ∃{r}.{{{a}}} holds trivially"]
    # radii: rho_a <= rho_b, rho_b <= rho_a, and rho_a != rho_b is infeasible
    ok = True
    for strict_dir in (1, -1):
        rows = [_row(2, {0: 1, 1: -1}), _row(2, {1: 1, 0: -1}), _row(2, {0: strict_dir, 1: -strict_dir}, True)]
        ok = ok and HPolyhedron.make(2, rows).is_empty()
    steps.append("case non-empty: ρ_a ≤ ρ_b and ρ_b ≤ ρ_a leave no room for ρ_a ≠ ρ_b" if ok else "radius step failed")
    # centres, per coordinate: c_a + v = c_b, c_b + v = c_a, v != 0 infeasible (vars c_a, c_b, v)
    for sgn in (1, -1):
        rows = [_row(3, {0: 1, 2: 1, 1: -1}), _row(3, {0: -1, 2: -1, 1: 1}),
                _row(3, {1: 1, 2: 1, 0: -1}), _row(3, {1: -1, 2: -1, 0: 1}),
                _row(3, {2: -sgn}, True)]
        ok = ok and HPolyhedron.make(3, rows).is_empty()
    steps.append("equal radii force c_a + v = c_b and c_b + v = c_a, hence v = 0 coordinate-wise"
                 if ok else "centre step failed")
    if ok:
        steps.append(f"with v = 0, Ball({{{a}}}) + v ⊆ Ball({{{a}}}): {query} holds in every model")
    return SymbolicResult("elem-cycle", ok, tuple(steps))


def elem_exists_bot(kb: KnowledgeBase, query) -> SymbolicResult:
    """∃r.A ⊑ ⊥ and A ⊑ ⊥ have the same truth condition (radius of A is 0)."""
    for ax in kb.tbox:
        if (isinstance(ax, SubClass) and isinstance(ax.rhs, Bot) and isinstance(ax.lhs, Exists)
                and query == SubClass(ax.lhs.filler, Bot())):
            return SymbolicResult("exists-bot", True, (
                f"{ax} holds iff ρ({ax.lhs.filler}) = 0", f"{query} holds iff ρ({ax.lhs.filler}) = 0"))
    return SymbolicResult("exists-bot", False, ("premises not found",))


def elem_top_radius(kb: KnowledgeBase) -> SymbolicResult:
    """∃r.A ⊑ ⊥ needs ρ(A) = 0 while ⊤ ⊑ A needs Ball(A) = ℝ^d."""
    zero = {ax.lhs.filler for ax in kb.tbox if isinstance(ax, SubClass) and isinstance(ax.rhs, Bot)
            and isinstance(ax.lhs, Exists)}
    zero |= {ax.lhs for ax in kb.tbox if isinstance(ax, SubClass) and isinstance(ax.rhs, Bot)
             and isinstance(ax.lhs, Name)}
    for ax in kb.tbox:
        if isinstance(ax, SubClass) and isinstance(ax.lhs, Top) and ax.rhs in zero:
            return SymbolicResult("top-radius", True, (
                f"ρ({ax.rhs}) = 0 from a ⊥ axiom", f"{ax} needs a ball containing ℝ^d, impossible with a finite radius"))
    return SymbolicResult("top-radius", False, ("premises not found",))


# ---------------------------------------------------------------- Box2EL arguments
def box2el_head_chain(kb: KnowledgeBase) -> SymbolicResult:
    """r1 ∘ r2 ⊑ r3 gives Head(r1) ⊆ Head(r3); with ∃r3.C ⊑ D this yields
    Head(r1) − Bump(C) ⊆ Box(D), which is ∃r1.C ⊑ D."""
    derived, steps = [], []
    for ax in kb.tbox:
        if isinstance(ax, SubRole) and isinstance(ax.sub, Comp):
            r1, r3 = ax.sub.first.name, ax.sup.name
            for r, C, D in _exl(kb):
                if r == r3:
                    q = SubClass(Exists(RName(r1), C), D)
                    derived.append(q)
                    steps += [f"{ax} gives Head({r1}) ⊆ Head({r3})",
                              f"∃{r3}.{C} ⊑ {D} gives Head({r3}) − Bump({C}) ⊆ Box({D})",
                              f"so Head({r1}) − Bump({C}) ⊆ Box({D}): {q}"]
    return SymbolicResult("box2el-head-chain", bool(derived), tuple(steps), tuple(derived))


def box2el_empty_head(kb: KnowledgeBase) -> SymbolicResult:
    """r ⊑ s with ∃r.X ⊑ P, ∃s.X ⊑ Q and P ⊓ Q ⊑ ⊥ force Head(r) = ∅, which no
    fact r(a,b) tolerates (it puts the point Box({a}) + Bump({b}) inside Head(r))."""
    dis = _disjoint_pairs(kb)
    ex = _exl(kb)
    sub = {(ax.sub.name, ax.sup.name) for ax in kb.tbox
           if isinstance(ax, SubRole) and isinstance(ax.sub, RName) and isinstance(ax.sup, RName)}
    rf, _ = facts(kb.abox)
    for r, s in sorted(sub):
        for (r1, X, P) in ex:
            for (s1, Y, Q) in ex:
                if (r1, s1) == (r, s) and X == Y and isinstance(P, Name) and isinstance(Q, Name) \
                        and frozenset((P.name, Q.name)) in dis:
                    steps = [f"Head({r}) ⊆ Head({s})",
                             f"Head({r}) − Bump({X}) ⊆ Box({P}) and ⊆ Head({s}) − Bump({X}) ⊆ Box({Q})",
                             f"Box({P}) ∩ Box({Q}) = ∅, so Head({r}) = ∅"]
                    hit = [f for f in rf if f[0] == r]
                    if hit:
                        steps.append(f"{r}{hit[0][1:]} needs a point in Head({r}): no Box2EL model")
                        return SymbolicResult("box2el-empty-head", True, tuple(steps))
    return SymbolicResult("box2el-empty-head", False, ("premises not found",))


# ---------------------------------------------------------------- Helly
def helly_triples(regions: Sequence[HPolyhedron]) -> List[Tuple[int, ...]]:
    """Index triples whose regions do not meet."""
    out = []
    for t in combinations(range(len(regions)), 3):
        p = regions[t[0]].intersect(regions[t[1]]).intersect(regions[t[2]])
        if p.is_empty():
            out.append(t)
    return out


# ---------------------------------------------------------------- registry
REGISTRY: Dict[str, Callable[..., SymbolicResult]] = {
    "midpoint": midpoint_conflict,
    "boxe-exclusion": boxe_exclusion_contradiction,
    "boxel-functional": boxel_functionality,
    "boxel-successor-meet": boxel_successor_meet,
    "elem-nominal-collapse": elem_nominal_collapse,
    "translation-meet": elem_translation_meet,
    "elem-cycle": elem_cycle,
    "exists-bot": elem_exists_bot,
    "top-radius": elem_top_radius,
    "box2el-head-chain": box2el_head_chain,
    "box2el-empty-head": box2el_empty_head,
}


def run_check(name: str, *args) -> SymbolicResult:
    return REGISTRY[name](*args)
