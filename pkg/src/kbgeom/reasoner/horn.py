"""Horn-ELHI⊥ reasoning by a least fixpoint over element types.

A type is a set of concept names (plus the markers '⊤' and '⊥'). Anonymous
elements are identified with the seed they are created from; a seed is the
filler of an existential plus what the parent pushes down along the inverse
edge. The fixpoint over seeds and named individuals yields the types of the
canonical model, which also gives a finite model by sharing elements per
(seed, role).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from ..errors import LanguageError
from ..kb.interp import FiniteInterpretation
from ..kb.language import nf_shape
from ..kb.syntax import (
    Bot, ConceptAssertion, Exists, Inv, KnowledgeBase, Name, NegRole, RName, RoleAssertion,
    SubClass, SubRole, Top,
)

BOTTOM = "⊥"
Role = Tuple[str, bool]  # (name, inverted)


def _r(x) -> Role:
    return (x.role.name, True) if isinstance(x, Inv) else (x.name, False)


def _inv(r: Role) -> Role:
    return (r[0], not r[1])


def _atom(c) -> Optional[str]:
    if isinstance(c, Top):
        return None
    if isinstance(c, Bot):
        return BOTTOM
    return c.name


class HornTBox:
    def __init__(self, tbox: Tuple, roles: Tuple[str, ...]):
        self.sub: Dict[Optional[str], List[str]] = {}
        self.conj: List[Tuple[Optional[str], Optional[str], str]] = []
        self.exl: List[Tuple[Role, Optional[str], str]] = []
        self.exr: List[Tuple[Optional[str], Role, str]] = []
        edges: Dict[Role, Set[Role]] = {}
        self.disjoint: Set[Tuple[Role, Role]] = set()
        all_roles = set(roles)
        for ax in tbox:
            if isinstance(ax, SubRole):
                r = _r(ax.sub)
                all_roles.add(r[0])
                if isinstance(ax.sup, NegRole):
                    s = _r(ax.sup.role)
                    all_roles.add(s[0])
                    self.disjoint |= {(r, s), (s, r), (_inv(r), _inv(s)), (_inv(s), _inv(r))}
                    continue
                s = _r(ax.sup)
                all_roles.add(s[0])
                edges.setdefault(r, set()).add(s)
                edges.setdefault(_inv(r), set()).add(_inv(s))
                continue
            shape = nf_shape(ax, inverses=True, nominals=False)
            if shape is None:
                raise LanguageError(f"Horn-ELHI reasoner cannot handle {ax}")
            l, rhs = ax.lhs, ax.rhs
            if isinstance(l, Bot) or isinstance(rhs, Top):
                continue
            if shape == "sub":
                self.sub.setdefault(_atom(l), []).append(_atom(rhs))
            elif shape == "conj":
                self.conj.append((_atom(l.left), _atom(l.right), _atom(rhs)))
            elif shape == "exl":
                self.exl.append((_r(l.role), _atom(l.filler), _atom(rhs)))
            else:
                if isinstance(rhs.filler, Bot):
                    self.sub.setdefault(_atom(l), []).append(BOTTOM)
                else:
                    self.exr.append((_atom(l), _r(rhs.role), _atom(rhs.filler)))
        self.roles = tuple(sorted(all_roles))
        self.sup: Dict[Role, FrozenSet[Role]] = {}
        for name in self.roles:
            for inv in (False, True):
                start = (name, inv)
                seen, stack = {start}, [start]
                while stack:
                    x = stack.pop()
                    for y in edges.get(x, ()):
                        if y not in seen:
                            seen.add(y)
                            stack.append(y)
                self.sup[start] = frozenset(seen)

    def sup_of(self, r: Role) -> FrozenSet[Role]:
        return self.sup.get(r, frozenset({r}))

    def clash(self, roles) -> bool:
        roles = set(roles)
        return any((a, b) in self.disjoint for a in roles for b in roles)

    def close(self, t) -> FrozenSet[str]:
        t = set(t)
        changed = True
        while changed:
            changed = False
            for a in [None] + list(t):
                for b in self.sub.get(a, ()):
                    if b not in t:
                        t.add(b)
                        changed = True
            for a1, a2, b in self.conj:
                if (a1 is None or a1 in t) and (a2 is None or a2 in t) and b not in t:
                    t.add(b)
                    changed = True
        return frozenset(t)

    def back(self, t, r: Role) -> Set[str]:
        """Facts a child reached via r learns from its parent of type t."""
        sups = self.sup_of(_inv(r))
        return {b for s, a, b in self.exl if s in sups and (a is None or a in t)}

    def up(self, child, r: Role) -> Set[str]:
        """Facts a parent learns from a child of type ``child`` reached via r."""
        if BOTTOM in child:
            return {BOTTOM}
        sups = self.sup_of(r)
        return {b for s, a, b in self.exl if s in sups and (a is None or a in child)}


class TypeFixpoint:
    def __init__(self, tb: HornTBox, abox: Tuple, individuals: Tuple[str, ...], seeds=()):
        self.tb = tb
        self.inds = tuple(individuals)
        self.concept_facts: Dict[str, Set[str]] = {a: set() for a in self.inds}
        self.edges: Dict[Tuple[str, str], Set[Role]] = {}
        for ax in abox:
            if isinstance(ax, ConceptAssertion):
                self.concept_facts.setdefault(ax.ind, set()).add(ax.concept.name)
            elif isinstance(ax, RoleAssertion):
                for s in tb.sup_of((ax.role, False)):
                    self.edges.setdefault((ax.a, ax.b), set()).add(s)
                    self.edges.setdefault((ax.b, ax.a), set()).add(_inv(s))
                self.concept_facts.setdefault(ax.a, set())
                self.concept_facts.setdefault(ax.b, set())
        self.inds = tuple(dict.fromkeys(list(self.inds) + list(self.concept_facts)))
        self.table: Dict[FrozenSet[str], FrozenSet[str]] = {}
        for s in seeds:
            self.table[frozenset(s)] = frozenset()
        self.ind_type: Dict[str, FrozenSet[str]] = {a: frozenset() for a in self.inds}
        self._run()

    def _children(self, t):
        for a, r, b in self.tb.exr:
            if a is None or a in t:
                yield r, frozenset({b}) | frozenset(self.tb.back(t, r))

    def _step_type(self, base, t):
        new = set(base) | set(t)
        for r, seed in self._children(t):
            if self.tb.clash(self.tb.sup_of(r)):
                new.add(BOTTOM)
                continue
            if seed not in self.table:
                self.table[seed] = frozenset()
            new |= self.tb.up(self.table[seed], r)
        return self.tb.close(new)

    def _run(self):
        changed = True
        while changed:
            changed = False
            size = len(self.table)
            for seed in list(self.table):
                t = self._step_type(seed, self.table[seed])
                if t != self.table[seed]:
                    self.table[seed] = t
                    changed = True
            for a in self.inds:
                t = set(self.ind_type[a]) | self.concept_facts.get(a, set())
                for (x, y), roles in self.edges.items():
                    if x != a:
                        continue
                    for s in roles:
                        t |= {b for s2, c, b in self.tb.exl
                              if s2 == s and (c is None or c in self.ind_type[y])}
                    if BOTTOM in self.ind_type[y]:
                        t.add(BOTTOM)
                t = self._step_type(frozenset(), frozenset(t))
                if t != self.ind_type[a]:
                    self.ind_type[a] = t
                    changed = True
            if len(self.table) != size:
                changed = True

    def consistent(self) -> bool:
        if any(BOTTOM in t for t in self.ind_type.values()):
            return False
        if any(self.tb.clash(r) for r in self.edges.values()):
            return False
        return True

    def type_of_seed(self, seed) -> FrozenSet[str]:
        return self.table[frozenset(seed)]


@lru_cache(maxsize=4096)
def _fix(tbox: Tuple, abox: Tuple, roles: Tuple, inds: Tuple, seeds: Tuple) -> TypeFixpoint:
    return TypeFixpoint(HornTBox(tbox, roles), abox, inds, seeds)


def _parts(kb: KnowledgeBase):
    if kb.language != "ELHI-bot-nf":
        raise LanguageError(f"Horn-ELHI reasoner expects ELHI-bot-nf, got {kb.language}")
    return kb.tbox, kb.abox, kb.signature.roles, kb.signature.individuals


def horn_consistent(kb: KnowledgeBase) -> bool:
    tbox, abox, roles, inds = _parts(kb)
    fp = _fix(tbox, abox, roles, inds, (frozenset(),))
    return fp.consistent() and BOTTOM not in fp.type_of_seed(())


def horn_entails(kb: KnowledgeBase, ax) -> bool:
    if not horn_consistent(kb):
        return True
    tbox, abox, roles, inds = _parts(kb)
    if isinstance(ax, ConceptAssertion):
        fp = _fix(tbox, abox, roles, inds, (frozenset(),))
        c = ax.concept
        if isinstance(c, Top):
            return True
        t = fp.ind_type.get(ax.ind, fp.type_of_seed(()))
        return (c.name if isinstance(c, Name) else BOTTOM) in t
    if isinstance(ax, RoleAssertion):
        fp = _fix(tbox, abox, roles, inds, (frozenset(),))
        return (ax.role, False) in fp.edges.get((ax.a, ax.b), set())
    if isinstance(ax, SubRole):
        x, y = "_i0", "_j0"
        r = ax.sub.name
        if isinstance(ax.sup, NegRole):
            s = _r(ax.sup.role)
            extra = (RoleAssertion(r, x, y),
                     RoleAssertion(s[0], y, x) if s[1] else RoleAssertion(s[0], x, y))
            ext = kb.with_axioms(extra)
            return not horn_consistent(ext)
        ext = kb.with_axioms((RoleAssertion(r, x, y),))
        if not horn_consistent(ext):
            return True
        fp = _fix(ext.tbox, ext.abox, ext.signature.roles, ext.signature.individuals, (frozenset(),))
        return _r(ax.sup) in fp.edges.get((x, y), set())
    shape = nf_shape(ax, inverses=True, nominals=False)
    if shape is None:
        raise LanguageError(f"Horn-ELHI reasoner cannot decide {ax}")
    l, rhs = ax.lhs, ax.rhs
    q = "_Q0"
    if shape == "sub":
        seed, extra = frozenset(a for a in [_atom(l)] if a is not None), ()
    elif shape == "conj":
        seed, extra = frozenset(a for a in (_atom(l.left), _atom(l.right)) if a is not None), ()
    elif shape == "exl":
        seed, extra = frozenset({q}), (SubClass(Name(q), Exists(l.role, l.filler)),)
    else:
        if isinstance(rhs.filler, Bot):
            return horn_entails(kb, SubClass(l, Bot()))
        seed = frozenset(a for a in [_atom(l)] if a is not None)
        extra = (SubClass(Exists(rhs.role, rhs.filler), Name(q)),)
        fp = _fix(tbox + extra, abox, roles, inds, (frozenset(), seed))
        t = fp.type_of_seed(seed)
        return BOTTOM in t or q in t
    fp = _fix(tbox + extra, abox, roles, inds, (frozenset(), seed))
    t = fp.type_of_seed(seed)
    if BOTTOM in seed or BOTTOM in t:
        return True
    target = _atom(rhs)
    return target is None or target in t


def horn_model(kb: KnowledgeBase, generic_seeds: bool = False) -> Optional[FiniteInterpretation]:
    """A finite model built from the type fixpoint, or None if inconsistent.

    Elements: individuals, then one element per (seed, role) reached by an
    existential. With ``generic_seeds`` the model also holds, with no incoming
    edges, one element per seed {A} and {A1, A2} and one per existential
    query ∃R.A (realized through a fresh name Q ⊑ ∃R.A that is dropped
    afterwards). Such a model violates every non-entailed normal-form TBox axiom.
    """
    if not horn_consistent(kb):
        return None
    tbox, abox, roles, inds = _parts(kb)
    names = kb.signature.concepts
    seeds = [frozenset()]
    queries = []
    if generic_seeds:
        for i, a in enumerate(names):
            seeds.append(frozenset({a}))
            for b in names[i + 1:]:
                seeds.append(frozenset({a, b}))
        k = 0
        for rn in roles:
            for role in (RName(rn), Inv(RName(rn))):
                for a in (Top(),) + tuple(Name(n) for n in names):
                    q = f"_Q{k}"
                    k += 1
                    queries.append(SubClass(Name(q), Exists(role, a)))
                    seeds.append(frozenset({q}))
        # one fresh edge per role, so that non-entailed role inclusions fail
        for rn in roles:
            w = (RoleAssertion(rn, f"_x{rn}", f"_y{rn}"),)
            if horn_consistent(kb.with_axioms(w)):
                abox = tuple(abox) + w
    tb = HornTBox(tuple(tbox) + tuple(queries), roles)
    fp = TypeFixpoint(tb, abox, inds, seeds)

    elems: Dict = {}
    types: List[FrozenSet[str]] = []
    edges: Set[Tuple[int, int, Role]] = set()
    pending = []

    def new(key, t):
        elems[key] = len(types)
        types.append(t)
        pending.append((elems[key], t))

    for a in fp.inds:
        new(("ind", a), fp.ind_type[a])
    if generic_seeds or not fp.inds:
        for s in seeds:
            t = fp.table[s]
            if BOTTOM not in t:
                new(("gen", s), t)
    while pending:
        x, t = pending.pop(0)
        for a, r, b in tb.exr:
            if a is not None and a not in t:
                continue
            seed = frozenset({b}) | frozenset(tb.back(t, r))
            if seed not in fp.table:
                fp.table[seed] = frozenset()
                fp._run()
            key = ("anon", seed, r)
            if key not in elems:
                new(key, fp.table[seed])
            for s in tb.sup_of(r):
                edges.add((x, elems[key], s))
    for (a, b), rs in fp.edges.items():
        for s in rs:
            edges.add((elems[("ind", a)], elems[("ind", b)], s))
    role_ext: Dict[str, Set] = {r: set() for r in kb.signature.roles}
    for x, y, (rn, inv) in edges:
        role_ext.setdefault(rn, set()).add((y, x) if inv else (x, y))
    concept_ext = {c: frozenset(i for i, t in enumerate(types) if c in t) for c in names}
    return FiniteInterpretation(
        tuple(range(len(types))), concept_ext,
        {k: frozenset(v) for k, v in role_ext.items()},
        {a: elems[("ind", a)] for a in kb.signature.individuals if ("ind", a) in elems},
    )
