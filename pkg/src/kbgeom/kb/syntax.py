"""Immutable abstract syntax for concepts, roles, axioms and knowledge bases."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union


# ---------------------------------------------------------------- concepts
@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "⊤"


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "⊥"


@dataclass(frozen=True)
class Name:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Nominal:
    ind: str

    def __str__(self):
        return "{" + self.ind + "}"


@dataclass(frozen=True)
class Not:
    arg: "Concept"

    def __str__(self):
        return f"¬{_paren(self.arg)}"


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"

    def __str__(self):
        return f"{_paren(self.left)}⊓{_paren(self.right)}"


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"

    def __str__(self):
        return f"{_paren(self.left)}⊔{_paren(self.right)}"


@dataclass(frozen=True)
class Exists:
    role: "Role"
    filler: "Concept"

    def __str__(self):
        return f"∃{self.role}.{_paren(self.filler)}"


@dataclass(frozen=True)
class Forall:
    role: "Role"
    filler: "Concept"

    def __str__(self):
        return f"∀{self.role}.{_paren(self.filler)}"


Concept = Union[Top, Bot, Name, Nominal, Not, And, Or, Exists, Forall]
ATOMS = (Top, Bot, Name, Nominal)


def _paren(c) -> str:
    return str(c) if isinstance(c, ATOMS + (Not,)) else f"({c})"


TOP, BOT = Top(), Bot()


# ---------------------------------------------------------------- roles
@dataclass(frozen=True)
class RName:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Inv:
    role: RName

    def __str__(self):
        return f"{self.role}⁻"


@dataclass(frozen=True)
class Comp:
    first: "Role"
    second: "Role"

    def __str__(self):
        return f"{self.first}∘{self.second}"


@dataclass(frozen=True)
class RoleAnd:
    left: "Role"
    right: "Role"

    def __str__(self):
        return f"{self.left}⊓{self.right}"


@dataclass(frozen=True)
class NegRole:
    role: "Role"

    def __str__(self):
        return f"¬{self.role}"


Role = Union[RName, Inv, Comp, RoleAnd, NegRole]


def base_name(r) -> str:
    """Role name underneath an optional inverse."""
    return r.role.name if isinstance(r, Inv) else r.name


def inverse(r):
    if isinstance(r, Inv):
        return r.role
    if isinstance(r, RName):
        return Inv(r)
    raise TypeError(f"no simple inverse for {r}")


# ---------------------------------------------------------------- axioms
@dataclass(frozen=True)
class SubClass:
    lhs: Concept
    rhs: Concept
    from_assertion: bool = field(default=False, compare=False)

    def __str__(self):
        return f"{self.lhs} ⊑ {self.rhs}"


@dataclass(frozen=True)
class SubRole:
    sub: Role
    sup: Role

    def __str__(self):
        return f"{self.sub} ⊑ {self.sup}"


@dataclass(frozen=True)
class RoleEquiv:
    left: Role
    right: Role

    def __str__(self):
        return f"{self.left} ≡ {self.right}"


@dataclass(frozen=True)
class ConceptAssertion:
    concept: Concept
    ind: str

    def __str__(self):
        return f"{_paren(self.concept)}({self.ind})"


@dataclass(frozen=True)
class RoleAssertion:
    role: str
    a: str
    b: str

    def __str__(self):
        return f"{self.role}({self.a},{self.b})"


PATTERN_ARITY = {
    "Symmetry": 1, "Asymmetry": 1, "Inversion": 2, "Hierarchy": 2,
    "Exclusion": 2, "Intersection": 3, "Composition": 3,
}


@dataclass(frozen=True)
class Pattern:
    kind: str
    roles: Tuple[str, ...]

    def __post_init__(self):
        if self.kind not in PATTERN_ARITY:
            raise ValueError(f"unknown pattern kind {self.kind}")
        if len(self.roles) != PATTERN_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {PATTERN_ARITY[self.kind]} roles")
        if len(set(self.roles)) != len(self.roles):
            raise ValueError("pattern roles must be distinct")

    def __str__(self):
        return f"{self.kind}({','.join(self.roles)})"


Axiom = Union[SubClass, SubRole, RoleEquiv, ConceptAssertion, RoleAssertion, Pattern]


def pattern_to_dl(p: Pattern) -> Axiom:
    r = [RName(x) for x in p.roles]
    k = p.kind
    if k == "Symmetry":
        return SubRole(r[0], Inv(r[0]))
    if k == "Asymmetry":
        return SubRole(r[0], NegRole(Inv(r[0])))
    if k == "Inversion":
        return RoleEquiv(r[0], Inv(r[1]))
    if k == "Hierarchy":
        return SubRole(r[0], r[1])
    if k == "Intersection":
        return SubRole(RoleAnd(r[0], r[1]), r[2])
    if k == "Composition":
        return SubRole(Comp(r[0], r[1]), r[2])
    return SubRole(r[0], NegRole(r[1]))  # Exclusion


def is_assertion(ax) -> bool:
    """ABox-like: a real assertion or a nominal axiom obtained from one."""
    if isinstance(ax, (ConceptAssertion, RoleAssertion)):
        return True
    if isinstance(ax, SubClass) and isinstance(ax.lhs, Nominal):
        rhs = ax.rhs
        if isinstance(rhs, Name):
            return True
        if isinstance(rhs, Exists) and isinstance(rhs.role, RName) and isinstance(rhs.filler, Nominal):
            return True
    return False


# ---------------------------------------------------------------- signature and KB
@dataclass(frozen=True)
class Signature:
    concepts: Tuple[str, ...] = ()
    roles: Tuple[str, ...] = ()
    individuals: Tuple[str, ...] = ()

    def __post_init__(self):
        for attr in ("concepts", "roles", "individuals"):
            vals = tuple(getattr(self, attr))
            if len(set(vals)) != len(vals):
                raise ValueError(f"duplicate names in {attr}")
            object.__setattr__(self, attr, vals)
        c, r, i = set(self.concepts), set(self.roles), set(self.individuals)
        if c & r or c & i or r & i:
            raise ValueError(f"signature sets overlap: {sorted((c & r) | (c & i) | (r & i))}")

    def extend(self, concepts=(), roles=(), individuals=()) -> "Signature":
        def add(old, new):
            out = list(old)
            for x in new:
                if x not in out:
                    out.append(x)
            return tuple(out)
        return Signature(add(self.concepts, concepts), add(self.roles, roles),
                         add(self.individuals, individuals))


LANGUAGES = ("ELO-bot-nf", "ELHO-comp-bot-nf", "ELHI-bot-nf", "patterns-no-comp", "patterns-full", "ALCp")


@dataclass(frozen=True)
class KnowledgeBase:
    signature: Signature
    tbox: Tuple[Axiom, ...] = ()
    abox: Tuple[Axiom, ...] = ()
    language: str = "ELO-bot-nf"

    def __post_init__(self):
        object.__setattr__(self, "tbox", tuple(self.tbox))
        object.__setattr__(self, "abox", tuple(self.abox))

    @property
    def axioms(self) -> Tuple[Axiom, ...]:
        return self.tbox + self.abox

    def with_axioms(self, extra, language: str | None = None) -> "KnowledgeBase":
        """Add axioms, routing assertions to the ABox and extending the signature."""
        tb, ab = list(self.tbox), list(self.abox)
        for ax in extra:
            (ab if isinstance(ax, (ConceptAssertion, RoleAssertion)) else tb).append(ax)
        sig = self.signature
        for ax in extra:
            c, r, i = symbols(ax)
            sig = sig.extend(c, r, i)
        return KnowledgeBase(sig, tuple(tb), tuple(ab), language or self.language)

    def __str__(self):
        return "\n".join(str(a) for a in self.axioms)


# ---------------------------------------------------------------- symbol collection
def _concept_syms(c, acc):
    if isinstance(c, Name):
        acc[0].append(c.name)
    elif isinstance(c, Nominal):
        acc[2].append(c.ind)
    elif isinstance(c, Not):
        _concept_syms(c.arg, acc)
    elif isinstance(c, (And, Or)):
        _concept_syms(c.left, acc)
        _concept_syms(c.right, acc)
    elif isinstance(c, (Exists, Forall)):
        _role_syms(c.role, acc)
        _concept_syms(c.filler, acc)


def _role_syms(r, acc):
    if isinstance(r, RName):
        acc[1].append(r.name)
    elif isinstance(r, (Inv, NegRole)):
        _role_syms(r.role, acc)
    elif isinstance(r, Comp):
        _role_syms(r.first, acc)
        _role_syms(r.second, acc)
    elif isinstance(r, RoleAnd):
        _role_syms(r.left, acc)
        _role_syms(r.right, acc)


def symbols(ax):
    """(concepts, roles, individuals) mentioned by an axiom, in order of occurrence."""
    acc = ([], [], [])
    if isinstance(ax, SubClass):
        _concept_syms(ax.lhs, acc)
        _concept_syms(ax.rhs, acc)
    elif isinstance(ax, (SubRole,)):
        _role_syms(ax.sub, acc)
        _role_syms(ax.sup, acc)
    elif isinstance(ax, RoleEquiv):
        _role_syms(ax.left, acc)
        _role_syms(ax.right, acc)
    elif isinstance(ax, ConceptAssertion):
        _concept_syms(ax.concept, acc)
        acc[2].append(ax.ind)
    elif isinstance(ax, RoleAssertion):
        acc[1].append(ax.role)
        acc[2].extend([ax.a, ax.b])
    elif isinstance(ax, Pattern):
        acc[1].extend(ax.roles)
    return acc
