"""Text format for knowledge bases: parse_kb and serialize_kb.

One statement per line, '#' starts a comment:

    Concepts: A B
    Roles: r
    Individuals: a b
    Language: ELO-bot-nf
    SubClassOf(And(A B) Exists(r Nominal(b)))
    Assert(A a)
    Assert(r a b)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from ..errors import LanguageError, ParseError
from .language import canonical_tag, check_kb_language, infer_language
from .syntax import (
    BOT, TOP, And, Bot, Comp, ConceptAssertion, Exists, Forall, Inv, KnowledgeBase, Name, NegRole,
    Nominal, Not, Or, Pattern, PATTERN_ARITY, RName, RoleAssertion, Signature,
    SubClass, SubRole, Top,
)

RESERVED = re.compile(r"^X\d+$")
_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_\-]*)|(\()|(\)))")


@dataclass
class _Term:
    head: str
    args: list
    line: int
    col: int
    call: bool


def _tokenize(s: str, line: int):
    pos, out = 0, []
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"unexpected character {s[pos:].lstrip()[:1]!r}", line, pos + 1)
        col = m.start(m.lastindex) + 1
        out.append((m.group(m.lastindex), col))
        pos = m.end()
    return out


def _parse_terms(toks, line):
    pos = 0

    def term():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of statement", line, (toks[-1][1] if toks else 1))
        tok, col = toks[pos]
        if tok in "()":
            raise ParseError(f"unexpected {tok!r}", line, col)
        pos += 1
        if pos < len(toks) and toks[pos][0] == "(":
            pos += 1
            args = []
            while True:
                if pos >= len(toks):
                    raise ParseError("missing ')'", line, col)
                if toks[pos][0] == ")":
                    pos += 1
                    break
                args.append(term())
            return _Term(tok, args, line, col, True)
        return _Term(tok, [], line, col, False)

    t = term()
    if pos != len(toks):
        raise ParseError(f"trailing input {toks[pos][0]!r}", line, toks[pos][1])
    return t


class _Builder:
    def __init__(self, allow_fresh: bool = False):
        self.allow_fresh = allow_fresh
        self.declared = {"concepts": [], "roles": [], "individuals": []}
        self.used = {"concepts": [], "roles": [], "individuals": []}

    def _name(self, t: _Term, kind: str) -> str:
        if t.call:
            raise ParseError(f"expected a {kind[:-1]} name, got {t.head}(...)", t.line, t.col)
        if t.head in ("Top", "Bot"):
            raise ParseError(f"{t.head} cannot be used as a {kind[:-1]} name", t.line, t.col)
        if RESERVED.match(t.head) and not self.allow_fresh:
            raise ParseError(f"name {t.head!r} collides with the reserved fresh-name prefix", t.line, t.col)
        if t.head not in self.used[kind]:
            self.used[kind].append(t.head)
        return t.head

    def _arity(self, t: _Term, n: int):
        if len(t.args) != n:
            raise ParseError(f"{t.head} expects {n} argument(s), got {len(t.args)}", t.line, t.col)

    def concept(self, t: _Term):
        h = t.head
        if not t.call:
            if h == "Top":
                return TOP
            if h == "Bot":
                return BOT
            return Name(self._name(t, "concepts"))
        if h == "Nominal":
            self._arity(t, 1)
            return Nominal(self._name(t.args[0], "individuals"))
        if h == "Not":
            self._arity(t, 1)
            return Not(self.concept(t.args[0]))
        if h in ("And", "Or"):
            if len(t.args) < 2:
                raise ParseError(f"{h} expects at least 2 arguments", t.line, t.col)
            parts = [self.concept(a) for a in t.args]
            out = parts[0]
            for p in parts[1:]:
                out = And(out, p) if h == "And" else Or(out, p)
            return out
        if h in ("Exists", "ExistsInv", "Forall", "ForallInv"):
            self._arity(t, 2)
            r = RName(self._name(t.args[0], "roles"))
            if h.endswith("Inv"):
                r = Inv(r)
            f = self.concept(t.args[1])
            return Exists(r, f) if h.startswith("Exists") else Forall(r, f)
        raise ParseError(f"unknown concept constructor {h!r}", t.line, t.col)

    def role(self, t):
        return RName(self._name(t, "roles"))

    def statement(self, t: _Term):
        h = t.head
        if h == "SubClassOf":
            self._arity(t, 2)
            return SubClass(self.concept(t.args[0]), self.concept(t.args[1]))
        if h in ("SubRoleOf", "SubRoleOfInv", "SubRoleOfNeg"):
            self._arity(t, 2)
            r, s = self.role(t.args[0]), self.role(t.args[1])
            sup = {"SubRoleOf": s, "SubRoleOfInv": Inv(s), "SubRoleOfNeg": NegRole(s)}[h]
            return SubRole(r, sup)
        if h == "SubCompositionOf":
            self._arity(t, 3)
            r, s, u = (self.role(a) for a in t.args)
            return SubRole(Comp(r, s), u)
        if h == "Pattern":
            if not t.args or t.args[0].call:
                raise ParseError("Pattern needs a kind", t.line, t.col)
            kind = t.args[0].head
            if kind not in PATTERN_ARITY:
                raise ParseError(f"unknown pattern kind {kind!r}", t.line, t.args[0].col)
            self._arity(t, PATTERN_ARITY[kind] + 1)
            roles = tuple(self.role(a).name for a in t.args[1:])
            if len(set(roles)) != len(roles):
                raise ParseError("pattern roles must be distinct", t.line, t.col)
            return Pattern(kind, roles)
        if h == "Assert":
            if len(t.args) == 2:
                return ConceptAssertion(self.concept(t.args[0]), self._name(t.args[1], "individuals"))
            if len(t.args) == 3:
                return RoleAssertion(self.role(t.args[0]).name, self._name(t.args[1], "individuals"),
                                     self._name(t.args[2], "individuals"))
            raise ParseError("Assert expects 2 or 3 arguments", t.line, t.col)
        raise ParseError(f"unknown statement {h!r}", t.line, t.col)


_HEADERS = {"concepts": "concepts", "roles": "roles", "individuals": "individuals"}


def parse_kb(text: str, default_language: str | None = None, allow_fresh: bool = False) -> KnowledgeBase:
    """Parse KB text. Names of the form X<digits> are reserved for normalization
    unless ``allow_fresh`` is set (used when re-reading normalized output)."""
    b = _Builder(allow_fresh)
    language = None
    axioms: List = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"\s*([A-Za-z]+)\s*:(.*)$", line)
        if m:
            key = m.group(1).lower()
            if key == "language":
                try:
                    language = canonical_tag(m.group(2).strip())
                except LanguageError as e:
                    raise ParseError(str(e), n, m.start(2) + 1) from None
                continue
            if key not in _HEADERS:
                raise ParseError(f"unknown header {m.group(1)!r}", n, 1)
            for tok, col in _tokenize(m.group(2), n):
                if tok in "()":
                    raise ParseError("unexpected parenthesis in header", n, col)
                if (RESERVED.match(tok) and not allow_fresh) or tok in ("Top", "Bot"):
                    raise ParseError(f"reserved name {tok!r}", n, col)
                b.declared[key].append(tok)
            continue
        toks = _tokenize(line, n)
        axioms.append(b.statement(_parse_terms(toks, n)))

    sig = Signature()
    for key in ("concepts", "roles", "individuals"):
        for name in b.declared[key] + b.used[key]:
            cur = getattr(sig, key)
            if name not in cur:
                sig = _add(sig, key, name)
    if language is None:
        language = canonical_tag(default_language) if default_language else infer_language(axioms)
    tbox = tuple(a for a in axioms if not isinstance(a, (ConceptAssertion, RoleAssertion)))
    abox = tuple(a for a in axioms if isinstance(a, (ConceptAssertion, RoleAssertion)))
    kb = KnowledgeBase(sig, tbox, abox, language)
    check_kb_language(kb)
    return kb


def _add(sig: Signature, key: str, name: str) -> Signature:
    try:
        if key == "concepts":
            return sig.extend(concepts=[name])
        if key == "roles":
            return sig.extend(roles=[name])
        return sig.extend(individuals=[name])
    except ValueError as e:
        raise ParseError(str(e)) from None


# ------------------------------------------------------------------ serialization
def ser_concept(c) -> str:
    if isinstance(c, Top):
        return "Top"
    if isinstance(c, Bot):
        return "Bot"
    if isinstance(c, Name):
        return c.name
    if isinstance(c, Nominal):
        return f"Nominal({c.ind})"
    if isinstance(c, Not):
        return f"Not({ser_concept(c.arg)})"
    if isinstance(c, And):
        return f"And({ser_concept(c.left)} {ser_concept(c.right)})"
    if isinstance(c, Or):
        return f"Or({ser_concept(c.left)} {ser_concept(c.right)})"
    if isinstance(c, (Exists, Forall)):
        head = "Exists" if isinstance(c, Exists) else "Forall"
        if isinstance(c.role, Inv):
            return f"{head}Inv({c.role.role.name} {ser_concept(c.filler)})"
        return f"{head}({c.role.name} {ser_concept(c.filler)})"
    raise TypeError(f"cannot serialize concept {c!r}")


def ser_axiom(ax) -> str:
    if isinstance(ax, SubClass):
        return f"SubClassOf({ser_concept(ax.lhs)} {ser_concept(ax.rhs)})"
    if isinstance(ax, SubRole):
        sub, sup = ax.sub, ax.sup
        if isinstance(sub, Comp):
            return f"SubCompositionOf({sub.first.name} {sub.second.name} {sup.name})"
        if isinstance(sup, Inv):
            return f"SubRoleOfInv({sub.name} {sup.role.name})"
        if isinstance(sup, NegRole) and isinstance(sup.role, RName):
            return f"SubRoleOfNeg({sub.name} {sup.role.name})"
        if isinstance(sub, RName) and isinstance(sup, RName):
            return f"SubRoleOf({sub.name} {sup.name})"
    if isinstance(ax, Pattern):
        return f"Pattern({ax.kind} {' '.join(ax.roles)})"
    if isinstance(ax, ConceptAssertion):
        return f"Assert({ser_concept(ax.concept)} {ax.ind})"
    if isinstance(ax, RoleAssertion):
        return f"Assert({ax.role} {ax.a} {ax.b})"
    raise TypeError(f"axiom {ax} has no surface syntax")


def serialize_kb(kb: KnowledgeBase) -> str:
    sig = kb.signature
    lines = []
    if sig.concepts:
        lines.append("Concepts: " + " ".join(sig.concepts))
    if sig.roles:
        lines.append("Roles: " + " ".join(sig.roles))
    if sig.individuals:
        lines.append("Individuals: " + " ".join(sig.individuals))
    lines.append(f"Language: {kb.language}")
    lines += [ser_axiom(a) for a in kb.tbox]
    lines += [ser_axiom(a) for a in kb.abox]
    return "\n".join(lines) + "\n"


def parse_axiom(text: str, sig: Signature | None = None):
    """Parse a single statement (used by the CLI for query axioms)."""
    b = _Builder(allow_fresh=True)
    return b.statement(_parse_terms(_tokenize(text.strip(), 1), 1))
