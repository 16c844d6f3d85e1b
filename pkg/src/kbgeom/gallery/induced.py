"""Classical interpretations read off an embedding, restricted to finitely many points.

The soundness arguments for conv, BoxE and ExpressivE build an interpretation
whose domain is (a part of) R^d. Over a finite set of points the same
definitions give a ``FiniteInterpretation`` that the classical checker can
evaluate. Restricting the domain keeps every axiom without an existential on
the right, so for pattern KBs the individuals' points are enough; for conv
models synthesized from a finite interpretation the simplex vertices are.
"""
from __future__ import annotations

from typing import Dict, List, Sequence

from ..geometry import concat, vadd
from ..kb.interp import FiniteInterpretation
from ..semantics import Embedding


def _index(points: Sequence) -> Dict:
    out: Dict = {}
    for p in points:
        out.setdefault(p, len(out))
    return out


def conv_induced(e: Embedding, points: Sequence) -> FiniteInterpretation:
    """Domain ``points``; A holds where E(A) contains the point, r on pairs whose
    concatenation lies in E(r)."""
    idx = _index(points)
    pts = list(idx)
    concepts = {c: frozenset(idx[p] for p in pts if reg.contains(p)) for c, reg in e.concepts.items()}
    roles = {r: frozenset((idx[p], idx[q]) for p in pts for q in pts if reg.contains(concat(p, q)))
             for r, reg in e.roles.items()}
    inds = {a: idx[v] for a, v in e.individuals.items() if v in idx}
    return FiniteInterpretation(tuple(range(len(pts))), concepts, roles, inds)


def simplex_vertices(d: int) -> List[tuple]:
    from fractions import Fraction
    return [tuple(Fraction(int(i == k)) for i in range(d)) for k in range(d)]


def boxe_induced(e: Embedding) -> FiniteInterpretation:
    """Domain: one element per individual. (c, d) is in r when the bumped points
    E(c) + bump(d) and E(d) + bump(c) land in the head and tail boxes of r.

    Adding every pair (x, y) with x in the head box and y in the tail box is not
    safe: such a pair can sit in r while a fact puts it in an excluded role s
    through the bumps, and then r ⊑ ¬s fails classically.
    """
    names = sorted(e.individuals)
    idx = {a: k for k, a in enumerate(names)}
    base = {a: e.ind(a)[0] for a in names}
    bump = {a: e.ind(a)[1] for a in names}
    concepts = {c: frozenset(idx[a] for a in names if box.contains(base[a])) for c, box in e.concepts.items()}
    roles = {}
    for r, (head, tail) in e.roles.items():
        roles[r] = frozenset((idx[c], idx[d]) for c in names for d in names
                             if head.contains(vadd(base[c], bump[d])) and tail.contains(vadd(base[d], bump[c])))
    return FiniteInterpretation(tuple(range(len(names))), concepts, roles, idx)


def expr_induced(e: Embedding) -> FiniteInterpretation:
    """Domain: the individuals' points; r holds on (x, y) when x ⊕ y is in E(r)."""
    idx = _index([e.ind(a) for a in sorted(e.individuals)])
    pts = list(idx)
    roles = {r: frozenset((idx[p], idx[q]) for p in pts for q in pts if reg.contains(p, q))
             for r, reg in e.roles.items()}
    inds = {a: idx[e.ind(a)] for a in e.individuals}
    return FiniteInterpretation(tuple(range(len(pts))), {}, roles, inds)
