"""Exhaustive search for finite models up to a domain bound, vectorised with numpy.

Every interpretation over a domain {0..n-1} is one row: concept extensions are
bitmasks, a role is stored as one successor bitmask per element, and the
individual map is a restricted-growth string (every interpretation is
isomorphic to one of those). Truth of an axiom over all rows is a boolean
array, cached in packed form per space.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ResourceCapError
from ..kb.interp import FiniteInterpretation
from ..kb.syntax import (
    And, Bot, Comp, ConceptAssertion, Exists, Forall, Inv, KnowledgeBase, Name, NegRole, Nominal,
    Not, Or, Pattern, RName, RoleAnd, RoleAssertion, RoleEquiv, Signature, SubClass, SubRole, Top,
    pattern_to_dl, symbols,
)

DEFAULT_MODEL_CAP = 2_000_000


def _rgs(k: int, n: int) -> List[Tuple[int, ...]]:
    out = []

    def go(prefix, mx):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for v in range(min(mx + 2, n)):
            go(prefix + [v], max(mx, v))
    go([], -1)
    return out


class BoundedSpace:
    def __init__(self, sig: Signature, n: int, cap: int = DEFAULT_MODEL_CAP):
        if n < 1 or n > 8:
            raise ResourceCapError("domain bound must lie in 1..8")
        self.sig, self.n = sig, n
        self.full = (1 << n) - 1
        maps = _rgs(len(sig.individuals), n)
        sizes = [1 << n] * len(sig.concepts) + [1 << (n * n)] * len(sig.roles) + [len(maps)]
        total = 1
        for s in sizes:
            total *= s
        if total > cap:
            raise ResourceCapError(f"{total} interpretations at domain size {n} exceed the cap {cap}")
        self.N = total
        idx = np.arange(total, dtype=np.int64)
        comps = []
        for s in reversed(sizes):
            comps.append(idx % s)
            idx = idx // s
        comps.reverse()
        k = 0
        self.conc: Dict[str, np.ndarray] = {}
        for c in sig.concepts:
            self.conc[c] = comps[k].astype(np.uint16)
            k += 1
        self.rel: Dict[str, np.ndarray] = {}
        self.succ: Dict[str, List[np.ndarray]] = {}
        for r in sig.roles:
            v = comps[k]
            self.rel[r] = v
            self.succ[r] = [((v >> (i * n)) & self.full).astype(np.uint16) for i in range(n)]
            k += 1
        mp = np.array(maps, dtype=np.int64).reshape(len(maps), len(sig.individuals))
        self.maps = maps
        self.map_idx = comps[k]
        self.ind = {a: mp[self.map_idx, j] for j, a in enumerate(sig.individuals)}
        self._cache: Dict = {}

    # ------------------------------------------------------------- evaluation
    def concept(self, c) -> np.ndarray:
        n = self.n
        if isinstance(c, Top):
            return np.full(self.N, self.full, dtype=np.uint16)
        if isinstance(c, Bot):
            return np.zeros(self.N, dtype=np.uint16)
        if isinstance(c, Name):
            return self.conc[c.name]
        if isinstance(c, Nominal):
            return (np.uint16(1) << self.ind[c.ind].astype(np.uint16)).astype(np.uint16)
        if isinstance(c, Not):
            return (self.full ^ self.concept(c.arg)).astype(np.uint16)
        if isinstance(c, And):
            return self.concept(c.left) & self.concept(c.right)
        if isinstance(c, Or):
            return self.concept(c.left) | self.concept(c.right)
        if isinstance(c, Exists):
            f = self.concept(c.filler)
            succ = self.role(c.role)
            out = np.zeros(self.N, dtype=np.uint16)
            for i in range(n):
                out |= ((succ[i] & f) != 0).astype(np.uint16) << i
            return out
        if isinstance(c, Forall):
            return self.concept(Not(Exists(c.role, Not(c.filler))))
        raise TypeError(f"unknown concept {c!r}")

    def role(self, r) -> List[np.ndarray]:
        n = self.n
        if isinstance(r, RName):
            return self.succ[r.name]
        if isinstance(r, Inv):
            s = self.role(r.role)
            out = []
            for j in range(n):
                acc = np.zeros(self.N, dtype=np.uint16)
                for i in range(n):
                    acc |= ((s[i] >> j) & 1).astype(np.uint16) << i
                out.append(acc)
            return out
        if isinstance(r, Comp):
            a, b = self.role(r.first), self.role(r.second)
            out = []
            for i in range(n):
                acc = np.zeros(self.N, dtype=np.uint16)
                for j in range(n):
                    acc |= np.where((a[i] >> j) & 1, b[j], 0).astype(np.uint16)
                out.append(acc)
            return out
        if isinstance(r, RoleAnd):
            return [x & y for x, y in zip(self.role(r.left), self.role(r.right))]
        if isinstance(r, NegRole):
            return [(self.full ^ x).astype(np.uint16) for x in self.role(r.role)]
        raise TypeError(f"unknown role {r!r}")

    def _truth(self, ax) -> np.ndarray:
        if isinstance(ax, Pattern):
            return self._truth(pattern_to_dl(ax))
        if isinstance(ax, SubClass):
            return (self.concept(ax.lhs) & ~self.concept(ax.rhs) & self.full) == 0
        if isinstance(ax, SubRole):
            a, b = self.role(ax.sub), self.role(ax.sup)
            ok = np.ones(self.N, dtype=bool)
            for x, y in zip(a, b):
                ok &= (x & ~y & self.full) == 0
            return ok
        if isinstance(ax, RoleEquiv):
            a, b = self.role(ax.left), self.role(ax.right)
            ok = np.ones(self.N, dtype=bool)
            for x, y in zip(a, b):
                ok &= x == y
            return ok
        if isinstance(ax, ConceptAssertion):
            return ((self.concept(ax.concept) >> self.ind[ax.ind].astype(np.uint16)) & 1).astype(bool)
        if isinstance(ax, RoleAssertion):
            succ = np.stack(self.succ[ax.role])
            row = np.take_along_axis(succ, self.ind[ax.a][None, :], axis=0)[0]
            return ((row >> self.ind[ax.b].astype(np.uint16)) & 1).astype(bool)
        raise TypeError(f"unknown axiom {ax!r}")

    def truth(self, ax) -> np.ndarray:
        key = ax
        hit = self._cache.get(key)
        if hit is None:
            hit = np.packbits(self._truth(ax))
            self._cache[key] = hit
        return np.unpackbits(hit, count=self.N).astype(bool)

    def models(self, axioms) -> np.ndarray:
        ok = np.ones(self.N, dtype=bool)
        for ax in axioms:
            ok &= self.truth(ax)
            if not ok.any():
                break
        return ok

    def interpretation(self, row: int) -> FiniteInterpretation:
        n = self.n
        ce = {c: frozenset(i for i in range(n) if (int(self.conc[c][row]) >> i) & 1) for c in self.sig.concepts}
        re = {}
        for r in self.sig.roles:
            v = int(self.rel[r][row])
            re[r] = frozenset((i, j) for i in range(n) for j in range(n) if (v >> (i * n + j)) & 1)
        im = {a: int(self.ind[a][row]) for a in self.sig.individuals}
        return FiniteInterpretation(tuple(range(n)), ce, re, im)


@lru_cache(maxsize=16)
def bounded_space(sig: Signature, n: int, cap: int = DEFAULT_MODEL_CAP) -> BoundedSpace:
    return BoundedSpace(sig, n, cap)


def _sig_for(kb: KnowledgeBase, extra=()) -> Signature:
    sig = kb.signature
    for ax in tuple(kb.axioms) + tuple(extra):
        c, r, i = symbols(ax)
        sig = sig.extend(c, r, i)
    return sig


def finite_model_search(kb: KnowledgeBase, max_domain: int, cap: int = DEFAULT_MODEL_CAP
                        ) -> Optional[FiniteInterpretation]:
    """First model (by domain size, then enumeration order) with |Δ| <= max_domain."""
    sig = _sig_for(kb)
    for n in range(1, max_domain + 1):
        sp = bounded_space(sig, n, cap)
        ok = sp.models(kb.axioms)
        hits = np.flatnonzero(ok)
        if hits.size:
            return sp.interpretation(int(hits[0]))
    return None


def bounded_consistent(kb: KnowledgeBase, bound: int, cap: int = DEFAULT_MODEL_CAP) -> bool:
    return finite_model_search(kb, bound, cap) is not None


def bounded_entails(kb: KnowledgeBase, ax, bound: int, cap: int = DEFAULT_MODEL_CAP) -> bool:
    """True iff no interpretation with |Δ| <= bound is a model of kb violating ax."""
    sig = _sig_for(kb, (ax,))
    for n in range(1, bound + 1):
        sp = bounded_space(sig, n, cap)
        if (sp.models(kb.axioms) & ~sp.truth(ax)).any():
            return False
    return True
