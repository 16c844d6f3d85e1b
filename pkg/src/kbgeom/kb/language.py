"""Language tags: admission of axiom shapes and exhaustive enumeration."""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Optional

from ..errors import LanguageError
from .syntax import (
    BOT, LANGUAGES, PATTERN_ARITY, TOP, And, Bot, Comp, ConceptAssertion, Exists, Inv, Name,
    NegRole, Nominal, Not, Or, Pattern, RName, RoleAssertion, Signature, SubClass, SubRole, Top,
)

ALIASES = {
    "ELHI⊥-nf": "ELHI-bot-nf", "ELO⊥-nf": "ELO-bot-nf", "ELHO(∘)⊥-nf": "ELHO-comp-bot-nf",
    "ELHO-bot-nf": "ELHO-comp-bot-nf", "ALC_p": "ALCp",
}

NOMINAL_TAGS = ("ELO-bot-nf", "ELHO-comp-bot-nf")
PATTERN_TAGS = ("patterns-no-comp", "patterns-full")
PATTERN_ORDER = ("Symmetry", "Asymmetry", "Inversion", "Hierarchy", "Exclusion", "Intersection", "Composition")


def canonical_tag(tag: str) -> str:
    tag = ALIASES.get(tag, tag)
    if tag not in LANGUAGES:
        raise LanguageError(f"unknown language tag {tag!r}")
    return tag


def _left_atom(c, nominals: bool) -> bool:
    return isinstance(c, (Top, Bot, Name)) or (nominals and isinstance(c, Nominal))


def _right_atom(c, nominals: bool) -> bool:
    return isinstance(c, (Top, Bot, Name)) or (nominals and isinstance(c, Nominal))


def _simple_role(r, inverses: bool) -> bool:
    return isinstance(r, RName) or (inverses and isinstance(r, Inv))


def nf_shape(ax, inverses: bool = True, nominals: bool = True) -> Optional[str]:
    """'sub' A⊑B, 'conj' A1⊓A2⊑B, 'exl' ∃R.A⊑B, 'exr' A⊑∃R.B, else None."""
    if not isinstance(ax, SubClass):
        return None
    l, r = ax.lhs, ax.rhs
    if _left_atom(l, nominals):
        if _right_atom(r, nominals):
            return "sub"
        if isinstance(r, Exists) and _simple_role(r.role, inverses) and _right_atom(r.filler, nominals):
            return "exr"
        return None
    if not _right_atom(r, nominals):
        return None
    if isinstance(l, And) and _left_atom(l.left, nominals) and _left_atom(l.right, nominals):
        return "conj"
    if isinstance(l, Exists) and _simple_role(l.role, inverses) and _left_atom(l.filler, nominals):
        return "exl"
    return None


def is_boolean(c) -> bool:
    if isinstance(c, (Top, Bot, Name)):
        return True
    if isinstance(c, Not):
        return is_boolean(c.arg)
    if isinstance(c, (And, Or)):
        return is_boolean(c.left) and is_boolean(c.right)
    return False


def admits(tag: str, ax) -> bool:
    tag = canonical_tag(tag)
    if tag == "ALCp":
        if isinstance(ax, SubClass):
            return is_boolean(ax.lhs) and is_boolean(ax.rhs)
        if isinstance(ax, ConceptAssertion):
            return is_boolean(ax.concept)
        return isinstance(ax, RoleAssertion)
    if tag in PATTERN_TAGS:
        if isinstance(ax, Pattern):
            return tag == "patterns-full" or ax.kind != "Composition"
        if isinstance(ax, ConceptAssertion):
            return tag == "patterns-no-comp" and isinstance(ax.concept, Name)
        return isinstance(ax, RoleAssertion)
    # normal-form description logic tags
    if isinstance(ax, RoleAssertion):
        return True
    if isinstance(ax, ConceptAssertion):
        return isinstance(ax.concept, Name)
    nominals = tag in NOMINAL_TAGS
    inverses = tag == "ELHI-bot-nf"
    if isinstance(ax, SubClass):
        return nf_shape(ax, inverses, nominals) is not None
    if isinstance(ax, SubRole):
        if tag == "ELO-bot-nf":
            return False
        sub, sup = ax.sub, ax.sup
        if tag == "ELHO-comp-bot-nf":
            if isinstance(sub, Comp):
                return all(isinstance(x, RName) for x in (sub.first, sub.second)) and isinstance(sup, RName)
            return isinstance(sub, RName) and isinstance(sup, RName)
        # ELHI: r ⊑ s, r ⊑ s⁻, and role disjointness r ⊑ ¬s
        if not isinstance(sub, RName):
            return False
        if isinstance(sup, NegRole):
            return isinstance(sup.role, RName)
        return _simple_role(sup, True)
    return False


def check_kb_language(kb) -> None:
    for ax in kb.axioms:
        if not admits(kb.language, ax):
            raise LanguageError(f"axiom {ax} is not expressible in {kb.language}")


def infer_language(axioms) -> str:
    for tag in LANGUAGES:
        if all(admits(tag, ax) for ax in axioms):
            return tag
    bad = next(ax for ax in axioms if not admits("ALCp", ax))
    raise LanguageError(f"no language tag admits {bad}")


def _nf_atoms(sig: Signature, nominals: bool):
    left = [TOP] + [Name(c) for c in sig.concepts]
    right = [BOT] + [Name(c) for c in sig.concepts]
    if nominals:
        left += [Nominal(a) for a in sig.individuals]
        right += [Nominal(a) for a in sig.individuals]
    return left, right


def enumerate_language(sig: Signature, tag: str) -> Iterator:
    """Every axiom of the (finite) language over ``sig``, deterministic order, no duplicates."""
    tag = canonical_tag(tag)
    if tag in PATTERN_TAGS:
        yield from _enum_patterns(sig, tag)
        return
    if tag == "ALCp":
        yield from _enum_alcp(sig)
        return
    nominals = tag in NOMINAL_TAGS
    left, right = _nf_atoms(sig, nominals)
    roles = [RName(r) for r in sig.roles]
    if tag == "ELHI-bot-nf":
        roles = roles + [Inv(r) for r in roles]
    for l in left:
        for r in right:
            yield SubClass(l, r)
    for l1, l2 in combinations(left, 2):
        for r in right:
            yield SubClass(And(l1, l2), r)
    for R in roles:
        for l in left:
            for r in right:
                yield SubClass(Exists(R, l), r)
    for l in left:
        for R in roles:
            for r in right:
                yield SubClass(l, Exists(R, r))
    names = [RName(r) for r in sig.roles]
    if tag in ("ELHO-comp-bot-nf", "ELHI-bot-nf"):
        for r, s in permutations(names, 2):
            yield SubRole(r, s)
    if tag == "ELHI-bot-nf":
        for r in names:
            for s in names:
                yield SubRole(r, Inv(s))
    if tag == "ELHO-comp-bot-nf":
        for r in names:
            for s in names:
                for t in names:
                    yield SubRole(Comp(r, s), t)
    if not nominals:
        for c in sig.concepts:
            for a in sig.individuals:
                yield ConceptAssertion(Name(c), a)
        yield from _role_assertions(sig)


def _role_assertions(sig: Signature):
    for r in sig.roles:
        for a in sig.individuals:
            for b in sig.individuals:
                yield RoleAssertion(r, a, b)


def _enum_patterns(sig: Signature, tag: str):
    for kind in PATTERN_ORDER:
        if kind == "Composition" and tag == "patterns-no-comp":
            continue
        for rs in permutations(sig.roles, PATTERN_ARITY[kind]):
            yield Pattern(kind, tuple(rs))
    if tag == "patterns-no-comp":
        for c in sig.concepts:
            for a in sig.individuals:
                yield ConceptAssertion(Name(c), a)
    yield from _role_assertions(sig)


def alcp_literals(sig: Signature):
    return [Name(c) for c in sig.concepts] + [Not(Name(c)) for c in sig.concepts]


def _enum_alcp(sig: Signature):
    """A finite slice of ALC_p: literal-level inclusions, binary conjunctions on the left,
    binary disjunctions on the right, and literal assertions."""
    lits = alcp_literals(sig)
    lhs = [TOP] + lits + [And(a, b) for a, b in combinations(lits, 2)]
    rhs = [BOT] + lits + [Or(a, b) for a, b in combinations(lits, 2)]
    for l in lhs:
        for r in rhs:
            yield SubClass(l, r)
    for lit in lits:
        for a in sig.individuals:
            yield ConceptAssertion(lit, a)
    yield from _role_assertions(sig)
