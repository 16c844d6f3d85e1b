"""Model synthesis.

Analytic constructions where one is known:

* conv: simplex-face polytopes over a finite classical model from the Horn
  reasoner (one coordinate per domain element);
* cone: one coordinate per admissible valuation of the concept names;
* boxe / box2el / expr: ABox constructions with one coordinate per negative
  fact, placing the negative pair at a strict extreme of that coordinate.

Every other case goes through a randomized repair search: start from a random
embedding, pick a violated axiom, apply a local move that satisfies it (grow
the right-hand region, shrink the left-hand one, cut two regions apart), and
repeat with restarts. Nothing is returned unless ``is_model`` accepts it.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import KBGeomError, UnsupportedFragment
from ..geometry import INF, AffineDiagMap, AlCone, BandStack, Box, HPolyhedron, OpenBall, vadd, vscale, vsub
from ..kb.language import nf_shape
from ..kb.syntax import (
    And, Bot, Comp, ConceptAssertion, Exists, Inv, KnowledgeBase, Name, NegRole, Nominal, Pattern,
    RoleAnd, RoleAssertion, RoleEquiv, SubClass, SubRole, Top, pattern_to_dl,
)
from ..kb.transform import assertion_to_nominal
from ..reasoner import horn_model
from ..reasoner.alcp import AlcpState
from ..semantics import Embedding, is_model, satisfies
from ..semantics.embedding import NOMINAL_METHODS
from ..semantics.satisfy import _boxel_ext

F0, F1 = Fraction(0), Fraction(1)


def _sqrt_up(x: Fraction) -> Fraction:
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return Fraction(isqrt(n * 10 ** 6 // d) + 1, 1000)


def _sqrt_down(x: Fraction) -> Fraction:
    return Fraction(isqrt(x.numerator * 10 ** 6 // x.denominator), 1000)


def _sq(v) -> Fraction:
    return sum((Fraction(x) * x for x in v), F0)


# ---------------------------------------------------------------- conv
def _simplex_face(n: int, support) -> HPolyhedron:
    rows = []
    for k in range(n):
        unit = tuple(F1 if i == k else F0 for i in range(n))
        rows.append((tuple(-x for x in unit), False, F0))
        if k not in support:
            rows.append((unit, False, F0))
    ones = (F1,) * n
    rows += [(ones, False, F1), (tuple(-x for x in ones), False, -F1)]
    return HPolyhedron.make(n, rows)


def _pair_hull(n: int, pairs, row_cap: int) -> HPolyhedron:
    """conv{e_i ⊕ e_j : (i, j) in pairs}, by projecting out the mixing weights."""
    pairs = sorted(pairs)
    if not pairs:
        return HPolyhedron.make(2 * n, [((F0,) * (2 * n), False, -F1)])
    m = len(pairs)
    dim = 2 * n + m
    rows = []

    def row(coeffs: Dict[int, Fraction], bound=F0):
        v = [F0] * dim
        for k, c in coeffs.items():
            v[k] += c
        return tuple(v)

    def eq(coeffs, bound=F0):
        rows.append((row(coeffs), False, bound))
        rows.append((tuple(-x for x in row(coeffs)), False, -bound))

    for k in range(m):
        rows.append((row({2 * n + k: -F1}), False, F0))
    for i in range(n):
        eq({i: F1, **{2 * n + k: -F1 for k, (a, _) in enumerate(pairs) if a == i}})
        eq({n + i: F1, **{2 * n + k: -F1 for k, (_, b) in enumerate(pairs) if b == i}})
    eq({2 * n + k: F1 for k in range(m)}, F1)
    return HPolyhedron.make(dim, rows).project(range(2 * n), row_cap)


def conv_from_interpretation(interp, individuals: Sequence[str], row_cap: int = 10_000) -> Embedding:
    n = len(interp.domain)
    pos = {x: k for k, x in enumerate(interp.domain)}

    def unit(k):
        return tuple(F1 if i == k else F0 for i in range(n))

    inds = {a: unit(pos[interp.ind(a)]) for a in individuals if a in interp.ind_map}
    concepts = {c: _simplex_face(n, {pos[x] for x in ext}) for c, ext in interp.concept_ext.items()}
    roles = {r: _pair_hull(n, {(pos[x], pos[y]) for x, y in ext}, row_cap)
             for r, ext in interp.role_ext.items()}
    return Embedding("conv", n, inds, concepts, roles)


def synth_conv(kb: KnowledgeBase, row_cap: int = 10_000) -> Optional[Embedding]:
    for generic in (False, True):
        interp = horn_model(kb, generic_seeds=generic)
        if interp is None:
            return None
        e = conv_from_interpretation(interp, kb.signature.individuals, row_cap)
        e = _fill_names(e, kb)
        if is_model(e, kb):
            return e
    return None


def _fill_names(e: Embedding, kb: KnowledgeBase) -> Embedding:
    """Give every signature name a payload (empty region) so audits can enumerate."""
    n = e.dim
    concepts = dict(e.concepts)
    roles = dict(e.roles)
    for c in kb.signature.concepts:
        concepts.setdefault(c, _simplex_face(n, set()) if n else HPolyhedron.full(0))
    for r in kb.signature.roles:
        roles.setdefault(r, _pair_hull(n, (), 10_000))
    return e.replace(concepts=concepts, roles=roles)


# ---------------------------------------------------------------- cone
def synth_cone(kb: KnowledgeBase) -> Optional[Embedding]:
    """Coordinates are the admissible valuations; C gets R where the valuation
    satisfies C and {0} elsewhere, and each individual sums the valuations
    compatible with its assertions. The result is strongly KB-faithful."""
    st = AlcpState(kb)
    adm = [k for k, ok in enumerate(st.admissible) if ok]
    if not adm:
        return None
    d = len(adm)
    concepts = {}
    for i, c in enumerate(st.names):
        concepts[c] = AlCone("".join("R" if st.vals[k, i] else "0" for k in adm))
    inds = {}
    for a in kb.signature.individuals:
        mask = st.per_ind.get(a, st.admissible)
        v = tuple(F1 if mask[k] else F0 for k in adm)
        if not any(v):
            return None
        inds[a] = v
    roles: Dict[str, set] = {r: set() for r in kb.signature.roles}
    for r, a, b in st.role_facts:
        roles.setdefault(r, set()).add((inds[a], inds[b]))
    e = Embedding("cone", d, inds, concepts, {r: frozenset(p) for r, p in roles.items()})
    return e if is_model(e, kb) else None


# ---------------------------------------------------------------- ABox constructions
def _facts(axioms) -> Tuple[List[ConceptAssertion], List[RoleAssertion]]:
    cs, rs = [], []
    for ax in axioms:
        if isinstance(ax, SubClass) and isinstance(ax.lhs, Nominal):
            if isinstance(ax.rhs, Name):
                ax = ConceptAssertion(ax.rhs, ax.lhs.ind)
            elif isinstance(ax.rhs, Exists) and isinstance(ax.rhs.filler, Nominal):
                ax = RoleAssertion(ax.rhs.role.name, ax.lhs.ind, ax.rhs.filler.ind)
        if isinstance(ax, ConceptAssertion) and isinstance(ax.concept, Name):
            cs.append(ax)
        elif isinstance(ax, RoleAssertion):
            rs.append(ax)
        else:
            raise UnsupportedFragment(f"ABox construction needs atomic facts, got {ax}")
    return cs, rs


def is_fact_set(axioms) -> bool:
    try:
        _facts(axioms)
        return True
    except UnsupportedFragment:
        return False


def _sig_names(kb: KnowledgeBase, neg) -> Tuple[List[str], List[str], List[str]]:
    cs, rs = _facts(neg)
    concepts = list(kb.signature.concepts) + [f.concept.name for f in cs]
    roles = list(kb.signature.roles) + [f.role for f in rs]
    inds = list(kb.signature.individuals) + [f.ind for f in cs] + [x for f in rs for x in (f.a, f.b)]
    dedup = lambda xs: list(dict.fromkeys(xs))  # noqa: E731
    return dedup(concepts), dedup(roles), dedup(inds)


def separate_boxes(method: str, pos: KnowledgeBase, neg) -> Embedding:
    """boxe / box2el model of the fact set ``pos`` falsifying every fact in ``neg``.

    Coordinate k is dedicated to the k-th negative fact. For a role fact
    r(a,b) only e_a and the bump of b are 1 there, so e_a + b_b = 2 is the
    unique maximum over all pairs and the head of r stops at 1. For a concept
    fact A(a) only e_a is 1 and the box of A stops at 1/2."""
    if pos.tbox:
        raise UnsupportedFragment("the ABox construction takes a TBox-free KB")
    concepts, roles, inds = _sig_names(pos, neg)
    ncs, nrs = _facts(neg)
    d = max(1, len(ncs) + len(nrs))
    base = {a: [F0] * d for a in inds}
    bump = {a: [F0] * d for a in inds}
    lo, hi = Fraction(-1), Fraction(3)
    cbox = {c: ([lo] * d, [hi] * d) for c in concepts}
    head = {r: ([lo] * d, [hi] * d) for r in roles}
    tail = {r: ([lo] * d, [hi] * d) for r in roles}
    k = 0
    for f in nrs:
        base[f.a][k] = F1
        bump[f.b][k] = F1
        head[f.role][1][k] = F1
        k += 1
    for f in ncs:
        base[f.ind][k] = F1
        cbox[f.concept.name][1][k] = Fraction(1, 2)
        k += 1

    def box(p):
        return Box(tuple(p[0]), tuple(p[1]))

    if method == "boxe":
        e = Embedding("boxe", d, {a: (tuple(base[a]), tuple(bump[a])) for a in inds},
                      {c: box(cbox[c]) for c in concepts},
                      {r: (box(head[r]), box(tail[r])) for r in roles})
    elif method == "box2el":
        e = Embedding("box2el", d, {a: (tuple(base[a]), tuple(bump[a])) for a in inds},
                      {c: (box(cbox[c]), (F0,) * d) for c in concepts},
                      {r: (box(head[r]), box(tail[r])) for r in roles})
    else:
        raise UnsupportedFragment(f"no box ABox construction for {method}")
    return e


def separate_bands(pos: KnowledgeBase, neg) -> Embedding:
    """expr model of the role facts ``pos`` falsifying every role fact in ``neg``.

    Coordinate k serves the k-th negative fact r(a,b). With a != b, a sits at 1
    and b at -1, so x - y peaks uniquely at (a,b) and r's band |x - y + 1/2| <= 3/2
    leaves it out. With a == b, a sits at 1 and x + y peaks at (a,a); the band
    |x + y + 4| <= 5 keeps [-9, 1]."""
    if pos.tbox:
        raise UnsupportedFragment("the ABox construction takes a TBox-free KB")
    ncs, nrs = _facts(neg)
    if ncs:
        raise UnsupportedFragment("ExpressivE has no concept assertions")
    _, roles, inds = _sig_names(pos, neg)
    d = max(1, len(nrs))
    z = {a: [F0] * d for a in inds}
    slope = {r: [F0] * d for r in roles}
    center = {r: [F0] * d for r in roles}
    width = {r: [Fraction(2)] * d for r in roles}
    for k, f in enumerate(nrs):
        z[f.a][k] = F1
        if f.a != f.b:
            z[f.b][k] = -F1
            slope[f.role][k], center[f.role][k], width[f.role][k] = F1, Fraction(-1, 2), Fraction(3, 2)
        else:
            slope[f.role][k], center[f.role][k], width[f.role][k] = -F1, Fraction(-4), Fraction(5)
    return Embedding("expr", d, {a: tuple(z[a]) for a in inds}, {},
                     {r: BandStack.from_bands(slope[r], center[r], width[r]) for r in roles})


def separation_construction(method: str, pos: KnowledgeBase, neg) -> Optional[Embedding]:
    if pos.tbox or not is_fact_set(pos.abox) or not is_fact_set(neg):
        return None
    if method in ("boxe", "box2el"):
        return separate_boxes(method, pos, neg)
    if method == "expr" and not any(isinstance(f, ConceptAssertion) for f in pos.abox):
        return separate_bands(pos, neg)
    return None


# ---------------------------------------------------------------- repair search
class _Stuck(Exception):
    """No local move can satisfy the axiom from this state."""


def _grow(target: Box, src: Box) -> Box:
    return target.hull(src) if not src.is_empty() else target


def _cut(x: Box, y: Box, rng: random.Random) -> Tuple[Box, Box]:
    """Shrink two boxes along one coordinate so that they become disjoint."""
    if x.is_empty() or y.is_empty() or x.disjoint(y):
        return x, y
    j = rng.randrange(x.dim)
    lo = max(x.lower[j], y.lower[j])
    hi = min(x.upper[j], y.upper[j])
    m = (lo + hi) / 2 if lo != -INF and hi != INF else F0
    eps = Fraction(1, 8)
    xl, xu, yl, yu = list(x.lower), list(x.upper), list(y.lower), list(y.upper)
    if (x.center[j] if x.lower[j] != -INF else -INF) <= (y.center[j] if y.upper[j] != INF else INF):
        xu[j], yl[j] = m - eps, m + eps
    else:
        yu[j], xl[j] = m - eps, m + eps
    return Box(tuple(xl), tuple(xu)), Box(tuple(yl), tuple(yu))


class _Search:
    """Mutable embedding state plus per-method repair moves."""

    def __init__(self, method: str, kb: KnowledgeBase, dim: int, rng: random.Random):
        self.method, self.kb, self.d, self.rng = method, kb, dim, rng
        sig = kb.signature
        self.concepts = list(sig.concepts)
        self.roles = list(sig.roles)
        self.inds = list(sig.individuals)
        self.ind: Dict = {}
        self.con: Dict = {}
        self.rol: Dict = {}

    def q(self, lo=-2, hi=2, den=4) -> Fraction:
        return Fraction(self.rng.randint(lo * den, hi * den), den)

    def point(self, lo=-2, hi=2):
        return tuple(self.q(lo, hi) for _ in range(self.d))

    def rbox(self, size=1) -> Box:
        c = self.point()
        off = tuple(Fraction(self.rng.randint(1, 4 * size), 4) for _ in range(self.d))
        return Box.from_center(c, off)

    def embedding(self) -> Embedding:
        return Embedding(self.method, self.d, dict(self.ind), dict(self.con), dict(self.rol))


class _BallSearch(_Search):
    def init(self):
        self.ind = {a: OpenBall(self.point(), self.q(0, 1)) for a in self.inds}
        self.con = {c: OpenBall(self.point(), self.q(0, 2)) for c in self.concepts}
        self.rol = {r: self.point(-1, 1) for r in self.roles}

    def _get(self, c) -> OpenBall:
        return self.ind[c.ind] if isinstance(c, Nominal) else self.con[c.name]

    def _set(self, c, b: OpenBall):
        if isinstance(c, Nominal):
            self.ind[c.ind] = b
        elif isinstance(c, Name):
            self.con[c.name] = b
        else:
            raise _Stuck(f"cannot change {c}")

    def _empty(self, c):
        if isinstance(c, Top):
            raise _Stuck("⊤ is never empty")
        if isinstance(c, Bot):
            return
        b = self._get(c)
        self._set(c, OpenBall(b.center, F0))

    def _contain(self, target, src: OpenBall):
        """Grow ``target`` so that it contains ``src``."""
        if isinstance(target, Top) or src.radius == 0:
            return
        if isinstance(target, Bot):
            raise _Stuck("cannot grow ⊥")
        t = self._get(target)
        need = _sqrt_up(_sq(vsub(src.center, t.center))) + src.radius
        self._set(target, OpenBall(t.center, max(t.radius, need)))

    def _disjoint(self, c1, c2):
        if isinstance(c1, Bot) or isinstance(c2, Bot):
            return
        if isinstance(c1, Top) or isinstance(c2, Top):
            self._empty(c2 if isinstance(c1, Top) else c1)
            return
        b1, b2 = self._get(c1), self._get(c2)
        dist = _sqrt_down(_sq(vsub(b1.center, b2.center)))
        tot = b1.radius + b2.radius
        if dist > 0 and tot > 0 and self.rng.random() < 0.6:
            t = dist / tot
            self._set(c1, OpenBall(b1.center, b1.radius * t))
            self._set(c2, OpenBall(b2.center, b2.radius * t))
        else:
            self._empty(self.rng.choice([c1, c2]))

    def _ball(self, c) -> OpenBall:
        if isinstance(c, Top):
            return OpenBall(tuple(F0 for _ in range(self.d)), INF)
        return self._get(c)

    def repair(self, ax):
        rng = self.rng
        if isinstance(ax, SubRole):
            if isinstance(ax.sub, Comp):
                s = vadd(self.rol[ax.sub.first.name], self.rol[ax.sub.second.name])
                self.rol[ax.sup.name] = s
            elif rng.random() < 0.5:
                self.rol[ax.sup.name] = self.rol[ax.sub.name]
            else:
                self.rol[ax.sub.name] = self.rol[ax.sup.name]
            return
        shape = nf_shape(ax, inverses=False)
        l, r = ax.lhs, ax.rhs
        if shape == "conj":
            if isinstance(r, Bot) or rng.random() < 0.15:
                self._disjoint(l.left, l.right)
                return
            parts = [p for p in (l.left, l.right) if not isinstance(p, Top)]
            if not parts:
                raise _Stuck("⊤ ⊓ ⊤ on the left")
            src = min(parts, key=lambda p: self._ball(p).radius)
            if rng.random() < 0.1:
                self._empty(src)
            else:
                self._contain(r, self._ball(src))
            return
        if shape == "exl":
            v = self.rol[l.role.name]
            if isinstance(r, Bot) or rng.random() < 0.1:
                self._empty(l.filler)
                return
            if isinstance(l.filler, Top):
                raise _Stuck("∃r.⊤ covers the whole space")
            self._contain(r, self._ball(l.filler).translate(vscale(-1, v)))
            return
        if shape == "exr":
            v = self.rol[r.role.name]
            if isinstance(r.filler, Bot) or rng.random() < 0.1:
                self._empty(l)
                return
            if isinstance(l, Top):
                raise _Stuck("⊤ on the left")
            self._contain(r.filler, self._ball(l).translate(v))
            return
        # sub
        if isinstance(r, Bot) or rng.random() < 0.1:
            self._empty(l)
            return
        if isinstance(l, Top):
            raise _Stuck("⊤ ⊑ A needs an unbounded ball")
        self._contain(r, self._ball(l))


class _ElbeSearch(_Search):
    def init(self):
        self.ind = {a: self.rbox() for a in self.inds}
        self.con = {c: self.rbox(2) for c in self.concepts}
        self.rol = {r: self.point(-1, 1) for r in self.roles}

    def _get(self, c) -> Box:
        if isinstance(c, Top):
            return Box.full(self.d)
        if isinstance(c, Bot):
            return Box.empty(self.d)
        if isinstance(c, Nominal):
            return self.ind[c.ind]
        if isinstance(c, And):
            return self._get(c.left).intersect(self._get(c.right))
        return self.con[c.name]

    def _set(self, c, b: Box):
        if isinstance(c, Nominal):
            self.ind[c.ind] = b
        elif isinstance(c, Name):
            self.con[c.name] = b
        else:
            raise _Stuck(f"cannot change {c}")

    def _contain(self, target, src: Box):
        if isinstance(target, Top) or src.is_empty():
            return
        if isinstance(target, Bot) or any(x in (INF, -INF) for x in src.lower + src.upper):
            raise _Stuck("cannot grow to an unbounded or empty target")
        self._set(target, _grow(self._get(target), src))

    def _pointify(self, c):
        b = self._get(c)
        self._set(c, Box.point(b.center))

    def repair(self, ax):
        shape = nf_shape(ax, inverses=False)
        l, r = ax.lhs, ax.rhs
        if isinstance(r, Bot):
            if shape == "sub":
                self._pointify(l)
            elif shape == "exl":
                self._pointify(l.filler)
            else:
                x, y = _cut(self._get(l.left), self._get(l.right), self.rng)
                self._set(l.left, x)
                self._set(l.right, y)
            return
        if shape == "exl":
            self._contain(r, self._get(l.filler).translate(vscale(-1, self.rol[l.role.name])))
        elif shape == "exr":
            self._contain(r.filler, self._get(l).translate(self.rol[r.role.name]))
        else:
            self._contain(r, self._get(l))


class _BoxelSearch(_Search):
    def init(self):
        self.ind = {a: self.point() for a in self.inds}
        self.con = {c: self.rbox(2) for c in self.concepts}
        self.rol = {r: AffineDiagMap(tuple(Fraction(self.rng.randint(2, 6), 4) for _ in range(self.d)),
                                     self.point(-1, 1)) for r in self.roles}

    def _ext(self, c) -> Box:
        return _boxel_ext(self.embedding(), c)

    def _contain(self, target, src: Box):
        if isinstance(target, Top) or src.is_empty():
            return
        if not isinstance(target, Name) or any(x in (INF, -INF) for x in src.lower + src.upper):
            raise _Stuck(f"cannot grow {target} to cover {src}")
        self.con[target.name] = _grow(self.con[target.name], src)

    def _empty(self, c):
        if isinstance(c, Name):
            self.con[c.name] = Box.empty(self.d)
        elif not isinstance(c, Bot):
            raise _Stuck(f"{c} cannot be emptied")

    def repair(self, ax):
        if isinstance(ax, ConceptAssertion):
            self._contain(ax.concept, Box.point(self.ind[ax.ind]))
            return
        if isinstance(ax, RoleAssertion):
            t = self.rol[ax.role]
            if self.rng.random() < 0.5:
                self.ind[ax.b] = t.apply(self.ind[ax.a])
            else:
                off = tuple(y - dd * x for dd, x, y in zip(t.diag, self.ind[ax.a], self.ind[ax.b]))
                self.rol[ax.role] = AffineDiagMap(t.diag, off)
            return
        shape = nf_shape(ax, inverses=False)
        l, r = ax.lhs, ax.rhs
        if isinstance(r, Bot):
            if shape == "conj":
                a, b = l.left, l.right
                if isinstance(a, Name) and isinstance(b, Name):
                    self.con[a.name], self.con[b.name] = _cut(self.con[a.name], self.con[b.name], self.rng)
                else:
                    self._empty(b if isinstance(b, Name) else a)
            elif shape == "exl":
                self._empty(l.filler)
            else:
                self._empty(l)
            return
        if shape == "exr":
            src = self._ext(l)
            f = r.filler
            if isinstance(f, Nominal):
                if src.is_empty():
                    return
                raise _Stuck("cannot map a region onto a point")
            self._contain(f, self.rol[r.role.name].image_box(src))
            return
        self._contain(r, self._ext(l))


class _Box2elSearch(_Search):
    def init(self):
        z = lambda: tuple(self.q(-1, 1) for _ in range(self.d))  # noqa: E731
        self.ind = {a: (self.point(), z()) for a in self.inds}
        self.con = {c: (self.rbox(2), z()) for c in self.concepts}
        self.rol = {r: (self.rbox(2), self.rbox(2)) for r in self.roles}

    def _box(self, c) -> Box:
        if isinstance(c, Top):
            return Box.full(self.d)
        if isinstance(c, Bot):
            return Box.empty(self.d)
        if isinstance(c, Nominal):
            return Box.point(self.ind[c.ind][0])
        if isinstance(c, And):
            return self._box(c.left).intersect(self._box(c.right))
        return self.con[c.name][0]

    def _bump(self, c):
        if isinstance(c, (Top, Bot)):
            return (F0,) * self.d
        return self.ind[c.ind][1] if isinstance(c, Nominal) else self.con[c.name][1]

    def _set_box(self, c, b: Box):
        if not isinstance(c, Name):
            raise _Stuck(f"cannot reshape {c}")
        self.con[c.name] = (b, self.con[c.name][1])

    def _contain(self, target, src: Box):
        if isinstance(target, Top) or src.is_empty():
            return
        if isinstance(target, Nominal) and src.subset(self._box(target)):
            return
        if any(x in (INF, -INF) for x in src.lower + src.upper):
            raise _Stuck("unbounded source")
        self._set_box(target, _grow(self._box(target), src))

    def repair(self, ax):
        rng = self.rng
        if isinstance(ax, SubRole):
            h2, t2 = self.rol[ax.sup.name]
            if isinstance(ax.sub, Comp):
                h1 = self.rol[ax.sub.first.name][0]
                t1 = self.rol[ax.sub.second.name][1]
            else:
                h1, t1 = self.rol[ax.sub.name]
            self.rol[ax.sup.name] = (_grow(h2, h1), _grow(t2, t1))
            return
        shape = nf_shape(ax, inverses=False)
        l, r = ax.lhs, ax.rhs
        if isinstance(r, Bot):
            if shape == "conj":
                a, b = l.left, l.right
                if isinstance(a, Name) and isinstance(b, Name):
                    x, y = _cut(self._box(a), self._box(b), rng)
                    self._set_box(a, x)
                    self._set_box(b, y)
                else:
                    self._set_box(b if isinstance(b, Name) else a, Box.empty(self.d))
            elif shape == "exl":
                h, t = self.rol[l.role.name]
                self.rol[l.role.name] = (Box.empty(self.d), t)
            else:
                self._set_box(l, Box.empty(self.d))
            return
        if shape == "exr":
            f = r.filler
            if isinstance(f, Bot) or self._box(f).is_empty():
                self._set_box(l, Box.empty(self.d))
                return
            h, t = self.rol[r.role.name]
            h = _grow(h, self._box(l).translate(self._bump(f)))
            t = _grow(t, self._box(f).translate(self._bump(l)))
            self.rol[r.role.name] = (h, t)
            return
        if shape == "exl":
            h = self.rol[l.role.name][0]
            self._contain(r, h.translate(vscale(-1, self._bump(l.filler))))
            return
        self._contain(r, self._box(l))


class _BoxeSearch(_Search):
    def init(self):
        z = lambda: tuple(self.q(-1, 1) for _ in range(self.d))  # noqa: E731
        self.ind = {a: (self.point(), z()) for a in self.inds}
        self.con = {c: self.rbox(2) for c in self.concepts}
        self.rol = {r: (self.rbox(2), self.rbox(2)) for r in self.roles}

    def repair(self, ax):
        rng = self.rng
        if rng.random() < 0.05:
            a = rng.choice(self.inds) if self.inds else None
            if a is not None:
                self.ind[a] = (self.point(), tuple(self.q(-1, 1) for _ in range(self.d)))
                return
        if isinstance(ax, ConceptAssertion):
            c = ax.concept.name
            self.con[c] = _grow(self.con[c], Box.point(self.ind[ax.ind][0]))
            return
        if isinstance(ax, RoleAssertion):
            (ea, ba), (eb, bb) = self.ind[ax.a], self.ind[ax.b]
            h, t = self.rol[ax.role]
            self.rol[ax.role] = (_grow(h, Box.point(vadd(ea, bb))), _grow(t, Box.point(vadd(eb, ba))))
            return
        ax = pattern_to_dl(ax) if isinstance(ax, Pattern) else ax
        if isinstance(ax, RoleEquiv):
            a, b = ax.left.name, ax.right.role.name
            h1, t1 = self.rol[a]
            h2, t2 = self.rol[b]
            x, y = h1.hull(t2), t1.hull(h2)
            self.rol[a], self.rol[b] = (x, y), (y, x)
            return
        sub, sup = ax.sub, ax.sup
        if isinstance(sub, RoleAnd):
            h1, t1 = self.rol[sub.left.name]
            h2, t2 = self.rol[sub.right.name]
            h3, t3 = self.rol[sup.name]
            self.rol[sup.name] = (_grow(h3, h1.intersect(h2)), _grow(t3, t1.intersect(t2)))
            return
        h1, t1 = self.rol[sub.name]
        if isinstance(sup, Inv):
            u = h1.hull(t1)
            self.rol[sub.name] = (u, u)
            return
        if isinstance(sup, NegRole):
            if isinstance(sup.role, Inv):
                self.rol[sub.name] = _cut(h1, t1, rng)
                return
            h2, t2 = self.rol[sup.role.name]
            if rng.random() < 0.5:
                h1, h2 = _cut(h1, h2, rng)
            else:
                t1, t2 = _cut(t1, t2, rng)
            self.rol[sub.name], self.rol[sup.role.name] = (h1, t1), (h2, t2)
            return
        h2, t2 = self.rol[sup.name]
        self.rol[sup.name] = (_grow(h2, h1), _grow(t2, t1))


class _ExprSearch(_Search):
    """Bands |x - s*y - c| <= w per coordinate, repaired parameter-wise."""

    def init(self):
        self.ind = {a: self.point() for a in self.inds}
        self.par = {r: ([F1 if self.rng.random() < 0.8 else self.rng.choice([F0, -F1]) for _ in range(self.d)],
                        [self.q(-1, 1) for _ in range(self.d)],
                        [self.q(0, 1) + Fraction(1, 4) for _ in range(self.d)]) for r in self.roles}

    def embedding(self) -> Embedding:
        rol = {r: BandStack.from_bands(*p) for r, p in self.par.items()}
        return Embedding("expr", self.d, dict(self.ind), {}, rol)

    def _copy_into(self, src: str, dst: str, extra=F0):
        s, c, w = self.par[src]
        s2, c2, w2 = self.par[dst]
        for j in range(self.d):
            if s2[j] != s[j]:
                s2[j], c2[j], w2[j] = s[j], c[j], w[j]
            w2[j] = max(w2[j], abs(c[j] - c2[j]) + w[j] + extra)

    def repair(self, ax):
        rng = self.rng
        if isinstance(ax, RoleAssertion):
            s, c, w = self.par[ax.role]
            x, y = self.ind[ax.a], self.ind[ax.b]
            for j in range(self.d):
                w[j] = max(w[j], abs(x[j] - s[j] * y[j] - c[j]))
            return
        ax = pattern_to_dl(ax) if isinstance(ax, Pattern) else ax
        if isinstance(ax, RoleEquiv):
            a, b = ax.left.name, ax.right.role.name
            if rng.random() < 0.5:  # the relation is mutual, so either side may be rewritten
                a, b = b, a
            s, c, w = self.par[b]
            if any(x == 0 for x in s):
                self.par[b] = ([F1] * self.d, c, w)
                s = self.par[b][0]
            self.par[a] = ([1 / x for x in s], [-y / x for x, y in zip(s, c)], [z / abs(x) for x, z in zip(s, w)])
            return
        sub, sup = ax.sub, ax.sup
        if isinstance(sub, RoleAnd):
            self._copy_into(rng.choice([sub.left.name, sub.right.name]), sup.name)
            return
        if isinstance(sub, Comp):
            s1, c1, w1 = self.par[sub.first.name]
            s2, c2, w2 = self.par[sub.second.name]
            s3, c3, w3 = self.par[sup.name]
            for j in range(self.d):
                s, c, w = s1[j] * s2[j], s1[j] * c2[j] + c1[j], w1[j] + abs(s1[j]) * w2[j]
                if s3[j] != s:
                    s3[j], c3[j], w3[j] = s, c, w
                w3[j] = max(w3[j], abs(c - c3[j]) + w)
            return
        name = sub.name
        s, c, w = self.par[name]
        if isinstance(sup, Inv):
            self.par[name] = ([F1] * self.d, [F0] * self.d, w)
            return
        if isinstance(sup, NegRole):
            j = rng.randrange(self.d)
            if isinstance(sup.role, Inv):
                s[j], c[j] = F1, w[j] + 1
                return
            s2, c2, w2 = self.par[sup.role.name]
            s2[j] = s[j]
            c2[j] = c[j] + w[j] + w2[j] + 1
            return
        self._copy_into(name, sup.name)


_ENGINES = {"elem": _BallSearch, "emel": _BallSearch, "elbe": _ElbeSearch, "boxel": _BoxelSearch,
            "box2el": _Box2elSearch, "boxe": _BoxeSearch, "expr": _ExprSearch}


def repair_search(method: str, kb: KnowledgeBase, budget: int = 2000, seed: int = 0, dim: int = 2,
                  iterations: int = 100, accept=None) -> Optional[Embedding]:
    """Randomized repair search; ``budget`` bounds the total number of moves.
    Models rejected by ``accept`` trigger a restart."""
    rng = random.Random(seed)
    axioms = [assertion_to_nominal(a) if method in NOMINAL_METHODS else a for a in kb.axioms]
    steps = 0
    while steps < budget:
        steps += 1  # a restart costs one move, so rejected models cannot loop forever
        s = _ENGINES[method](method, kb, dim, rng)
        s.init()
        for _ in range(iterations):
            e = s.embedding()
            bad = [ax for ax in axioms if not satisfies(e, ax)]
            if not bad:
                if is_model(e, kb) and (accept is None or accept(e)):
                    return e
                break
            steps += 1
            if steps > budget:
                return None
            try:
                s.repair(rng.choice(bad))
            except (_Stuck, KBGeomError):
                break
    return None


def synth_model(method: str, kb: KnowledgeBase, budget: int = 2000, seed: int = 0,
                dim: int = 2, row_cap: int = 10_000) -> Optional[Embedding]:
    """An M-model of ``kb`` verified by is_model, or None within the budget."""
    if method == "conv":
        return synth_conv(kb, row_cap)
    if method == "cone":
        return synth_cone(kb)
    e = separation_construction(method, kb, ())
    if e is not None and is_model(e, kb):
        return e
    return repair_search(method, kb, budget, seed, dim)
