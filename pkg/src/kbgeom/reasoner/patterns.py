"""Datalog-style chase for pattern rules and critical-instance entailment."""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Set, Tuple

from ..errors import LanguageError
from ..kb.syntax import (
    Comp, Inv, KnowledgeBase, NegRole, Pattern, RName, RoleAnd, RoleAssertion, RoleEquiv, SubRole,
    pattern_to_dl,
)

Atom = Tuple[str, str, str]  # (role, subject, object)


@dataclass(frozen=True)
class Rule:
    kind: str       # 'copy' r(x,y)->s(x,y) / s(y,x); 'comp'; 'and'; 'deny'
    body: Tuple
    head: Tuple


def _simple(r) -> Tuple[str, bool]:
    if isinstance(r, RName):
        return r.name, False
    if isinstance(r, Inv) and isinstance(r.role, RName):
        return r.role.name, True
    raise LanguageError(f"unsupported role expression {r}")


def rules_of(ax) -> List[Rule]:
    if isinstance(ax, Pattern):
        ax = pattern_to_dl(ax)
    if isinstance(ax, RoleEquiv):
        (r, rinv), (s, sinv) = _simple(ax.left), _simple(ax.right)
        flip = rinv != sinv
        return [Rule("copy", (r,), (s, flip)), Rule("copy", (s,), (r, flip))]
    if not isinstance(ax, SubRole):
        raise LanguageError(f"{ax} is not a role rule")
    sub, sup = ax.sub, ax.sup
    if isinstance(sup, NegRole):
        s, inv = _simple(sup.role)
        if isinstance(sub, RName):
            return [Rule("deny", (sub.name, s, inv), ())]
        raise LanguageError(f"unsupported rule {ax}")
    t, inv = _simple(sup)
    if isinstance(sub, Comp):
        return [Rule("comp", (sub.first.name, sub.second.name), (t, inv))]
    if isinstance(sub, RoleAnd):
        return [Rule("and", (sub.left.name, sub.right.name), (t, inv))]
    r, rinv = _simple(sub)
    return [Rule("copy", (r,), (t, inv != rinv))]


def chase(rules: Iterable[Rule], facts: Iterable[Atom]) -> Tuple[FrozenSet[Atom], bool]:
    """Least fixpoint of the positive rules; second item False if a denial fires."""
    rules = list(rules)
    closed: Set[Atom] = set(facts)
    frontier = set(closed)
    while frontier:
        new: Set[Atom] = set()
        for rule in rules:
            if rule.kind == "copy":
                (r,), (t, flip) = rule.body, rule.head
                for (q, x, y) in closed:
                    if q == r:
                        new.add((t, y, x) if flip else (t, x, y))
            elif rule.kind == "and":
                (r, s), (t, flip) = rule.body, rule.head
                for (q, x, y) in closed:
                    if q == r and (s, x, y) in closed:
                        new.add((t, y, x) if flip else (t, x, y))
            elif rule.kind == "comp":
                (r, s), (t, flip) = rule.body, rule.head
                for (q, x, y) in closed:
                    if q != r:
                        continue
                    for (q2, y2, z) in closed:
                        if q2 == s and y2 == y:
                            new.add((t, z, x) if flip else (t, x, z))
        frontier = new - closed
        closed |= frontier
    ok = True
    for rule in rules:
        if rule.kind == "deny":
            r, s, flip = rule.body
            for (q, x, y) in closed:
                if q == r and ((s, y, x) if flip else (s, x, y)) in closed:
                    ok = False
    return frozenset(closed), ok


@dataclass(frozen=True)
class ChaseResult:
    closure: FrozenSet[Atom]
    consistent: bool


def pattern_chase(kb: KnowledgeBase) -> ChaseResult:
    rules = [r for ax in kb.tbox for r in rules_of(ax)]
    facts = [(a.role, a.a, a.b) for a in kb.abox if isinstance(a, RoleAssertion)]
    closure, ok = chase(rules, facts)
    return ChaseResult(closure, ok)


def critical_instances(phi) -> List[Tuple[List[Atom], object]]:
    """(body atoms, head) pairs; head is an Atom or None for a denial."""
    d = pattern_to_dl(phi) if isinstance(phi, Pattern) else phi
    out = []
    for rule in rules_of(d):
        if rule.kind == "copy":
            (r,), (t, flip) = rule.body, rule.head
            out.append(([(r, "x", "y")], (t, "y", "x") if flip else (t, "x", "y")))
        elif rule.kind == "and":
            (r, s), (t, flip) = rule.body, rule.head
            out.append(([(r, "x", "y"), (s, "x", "y")], (t, "y", "x") if flip else (t, "x", "y")))
        elif rule.kind == "comp":
            (r, s), (t, flip) = rule.body, rule.head
            out.append(([(r, "x", "y"), (s, "y", "z")], (t, "z", "x") if flip else (t, "x", "z")))
        else:
            r, s, flip = rule.body
            out.append(([(r, "x", "y"), (s, "y", "x") if flip else (s, "x", "y")], None))
    return out


def pattern_entails(patterns: Iterable, phi) -> bool:
    rules = [r for p in patterns for r in rules_of(p)]
    for body, head in critical_instances(phi):
        closure, ok = chase(rules, body)
        if not ok:
            continue
        if head is None or head not in closure:
            return False
    return True


def pattern_kb_entails(kb: KnowledgeBase, ax) -> bool:
    """Entailment for pattern-language KBs (patterns, role and concept assertions)."""
    from ..kb.syntax import ConceptAssertion
    res = pattern_chase(kb)
    if not res.consistent:
        return True
    if isinstance(ax, RoleAssertion):
        return (ax.role, ax.a, ax.b) in res.closure
    if isinstance(ax, ConceptAssertion):
        return ax in kb.abox
    return pattern_entails(kb.tbox, ax)


def pattern_consistent(kb: KnowledgeBase) -> bool:
    return pattern_chase(kb).consistent
