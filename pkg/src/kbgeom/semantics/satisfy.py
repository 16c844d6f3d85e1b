"""Satisfaction relations, one per method, all decided exactly."""
from __future__ import annotations


from ..errors import LanguageError, PreconditionError, UnsupportedFragment
from ..geometry import (
    INF, Box, HPolyhedron, OpenBall, Verdict, ball_subset, balls_disjoint, concat, lens_subset_ball,
    vadd, vscale,
)
from ..geometry.cones import AlCone
from ..geometry.polyhedra import DEFAULT_ROW_CAP
from ..kb.language import admits, nf_shape
from ..kb.syntax import (
    And, Bot, Comp, ConceptAssertion, Exists, Forall, Inv, Name, NegRole, Nominal, Not, Or, Pattern,
    RoleAnd, RoleAssertion, RoleEquiv, SubClass, SubRole, Top, pattern_to_dl,
)
from ..kb.transform import assertion_to_nominal
from .embedding import METHOD_LANGUAGE, NOMINAL_METHODS, Embedding, zero

TRUE = Verdict(True)
FALSE = Verdict(False)


def _v(b) -> Verdict:
    return b if isinstance(b, Verdict) else Verdict(bool(b))


def _gate(e: Embedding, ax, method: str):
    if e.method != method:
        raise PreconditionError(f"expected a {method} embedding, got {e.method}")
    if e.method in NOMINAL_METHODS:
        ax = assertion_to_nominal(ax)
    if not admits(METHOD_LANGUAGE[method], ax):
        raise LanguageError(f"{ax} is outside the {method} language {METHOD_LANGUAGE[method]}")
    return ax


# ---------------------------------------------------------------- conv
def _conv_role(e: Embedding, r) -> HPolyhedron:
    if isinstance(r, Inv):
        return e.role(r.role.name).swap_halves()
    return e.role(r.name)


def _conv_concept(e: Embedding, c, row_cap: int) -> HPolyhedron:
    d = e.dim
    if isinstance(c, Top):
        return HPolyhedron.full(d)
    if isinstance(c, Bot):
        return HPolyhedron.make(d, [((0,) * d, False, -1)])
    if isinstance(c, Name):
        return e.concept(c.name)
    if isinstance(c, And):
        return _conv_concept(e, c.left, row_cap).intersect(_conv_concept(e, c.right, row_cap))
    if isinstance(c, Exists):
        filler = _conv_concept(e, c.filler, row_cap).lift(2 * d, range(d, 2 * d))
        return _conv_role(e, c.role).intersect(filler).project(range(d), row_cap)
    raise UnsupportedFragment(f"conv has no region for {c}")


def satisfies_conv(e: Embedding, ax, row_cap: int = DEFAULT_ROW_CAP) -> Verdict:
    ax = _gate(e, ax, "conv")
    if isinstance(ax, ConceptAssertion):
        return _v(e.concept(ax.concept.name).contains(e.ind(ax.ind)))
    if isinstance(ax, RoleAssertion):
        return _v(e.role(ax.role).contains(concat(e.ind(ax.a), e.ind(ax.b))))
    if isinstance(ax, SubRole):
        sub = e.role(ax.sub.name)
        if isinstance(ax.sup, NegRole):
            return _v(sub.disjoint(_conv_role(e, ax.sup.role), row_cap))
        return _v(sub.subset(_conv_role(e, ax.sup), row_cap))
    lhs = _conv_concept(e, ax.lhs, row_cap)
    return _v(lhs.subset(_conv_concept(e, ax.rhs, row_cap), row_cap))


# ---------------------------------------------------------------- cone
def cone_concept(e: Embedding, c) -> AlCone:
    d = e.dim
    if isinstance(c, Top):
        return AlCone.full(d)
    if isinstance(c, Bot):
        return AlCone.zero(d)
    if isinstance(c, Name):
        return e.concept(c.name)
    if isinstance(c, Not):
        return cone_concept(e, c.arg).polar()
    if isinstance(c, And):
        return cone_concept(e, c.left).meet(cone_concept(e, c.right))
    if isinstance(c, Or):
        return cone_concept(e, c.left).polar().meet(cone_concept(e, c.right).polar()).polar()
    if isinstance(c, (Exists, Forall)):
        raise UnsupportedFragment(f"al-cone role restrictions are not implemented: {c}")
    raise UnsupportedFragment(f"cone has no region for {c}")


def satisfies_cone(e: Embedding, ax) -> Verdict:
    if e.method != "cone":
        raise PreconditionError(f"expected a cone embedding, got {e.method}")
    for part in _concepts_of(ax):
        if isinstance(part, (Exists, Forall)):
            raise UnsupportedFragment(f"al-cone role restrictions are not implemented: {ax}")
    ax = _gate(e, ax, "cone")
    if isinstance(ax, ConceptAssertion):
        return _v(cone_concept(e, ax.concept).contains(e.ind(ax.ind)))
    if isinstance(ax, RoleAssertion):
        return _v((e.ind(ax.a), e.ind(ax.b)) in e.role(ax.role))
    return _v(cone_concept(e, ax.lhs).leq(cone_concept(e, ax.rhs)))


def _concepts_of(ax):
    stack = []
    if isinstance(ax, SubClass):
        stack = [ax.lhs, ax.rhs]
    elif isinstance(ax, ConceptAssertion):
        stack = [ax.concept]
    while stack:
        c = stack.pop()
        yield c
        for attr in ("arg", "left", "right", "filler"):
            if hasattr(c, attr):
                stack.append(getattr(c, attr))


# ---------------------------------------------------------------- elem / emel
def _ball(e: Embedding, c) -> OpenBall:
    if isinstance(c, Top):
        return OpenBall(zero(e.dim), INF)
    if isinstance(c, Name):
        return e.concept(c.name)
    if isinstance(c, Nominal):
        return e.ind(c.ind)
    if isinstance(c, Exists):
        return _ball(e, c.filler).translate(vscale(-1, e.role(c.role.name)))
    raise UnsupportedFragment(f"no ball for {c}")


def _elem_concept_axiom(e: Embedding, ax: SubClass) -> Verdict:
    shape = nf_shape(ax, inverses=False)
    if isinstance(ax.rhs, Bot):
        if shape == "sub":
            return _v(isinstance(ax.lhs, Bot) or _ball(e, ax.lhs).radius == 0)
        if shape == "exl":
            return _v(isinstance(ax.lhs.filler, Bot) or _ball(e, ax.lhs.filler).radius == 0)
        parts = [ax.lhs.left, ax.lhs.right]
        if any(isinstance(p, Bot) for p in parts):
            return TRUE
        return _v(balls_disjoint(*(_ball(e, p) for p in parts)))
    if _mentions_bot(ax.lhs):
        return TRUE
    if _mentions_bot(ax.rhs):
        # only A ⊑ ∃r.⊥ reaches here: the right side is the empty set
        return _v(_empty_lhs_ball(e, ax.lhs))
    rhs = _ball(e, ax.rhs)
    if shape == "conj":
        return lens_subset_ball(_ball(e, ax.lhs.left), _ball(e, ax.lhs.right), rhs)
    return _v(ball_subset(_ball(e, ax.lhs), rhs))


def _mentions_bot(c) -> bool:
    if isinstance(c, Bot):
        return True
    if isinstance(c, Exists):
        return _mentions_bot(c.filler)
    if isinstance(c, And):
        return _mentions_bot(c.left) or _mentions_bot(c.right)
    return False


def _empty_lhs_ball(e, c) -> bool:
    if isinstance(c, And):
        return balls_disjoint(_ball(e, c.left), _ball(e, c.right))
    return _ball(e, c).is_empty


def satisfies_elem(e: Embedding, ax) -> Verdict:
    ax = _gate(e, ax, e.method if e.method == "emel" else "elem")
    if isinstance(ax, SubRole):
        raise LanguageError(f"role axioms need emel, not elem: {ax}")
    return _elem_concept_axiom(e, ax)


def satisfies_emel(e: Embedding, ax) -> Verdict:
    ax = _gate(e, ax, "emel")
    if isinstance(ax, SubRole):
        sup = e.role(ax.sup.name)
        if isinstance(ax.sub, Comp):
            return _v(vadd(e.role(ax.sub.first.name), e.role(ax.sub.second.name)) == sup)
        return _v(e.role(ax.sub.name) == sup)
    return _elem_concept_axiom(e, ax)


# ---------------------------------------------------------------- elbe
def _box(e: Embedding, c) -> Box:
    if isinstance(c, Top):
        return Box.full(e.dim)
    if isinstance(c, Bot):
        return Box.empty(e.dim)
    if isinstance(c, Name):
        return e.concept(c.name)
    if isinstance(c, Nominal):
        return e.ind(c.ind)
    if isinstance(c, And):
        return _box(e, c.left).intersect(_box(e, c.right))
    if isinstance(c, Exists):
        return _box(e, c.filler).translate(vscale(-1, e.role(c.role.name)))
    raise UnsupportedFragment(f"no box for {c}")


def _zero_offset(b: Box) -> bool:
    return all(l == u for l, u in zip(b.lower, b.upper))


def satisfies_elbe(e: Embedding, ax) -> Verdict:
    ax = _gate(e, ax, "elbe")
    if isinstance(ax.rhs, Bot):
        shape = nf_shape(ax, inverses=False)
        if shape == "sub":
            return _v(isinstance(ax.lhs, Bot) or _zero_offset(_box(e, ax.lhs)))
        if shape == "exl":
            return _v(isinstance(ax.lhs.filler, Bot) or _zero_offset(_box(e, ax.lhs.filler)))
        # A1 ⊓ A2 ⊑ ⊥: the two boxes do not meet
        return _v(_box(e, ax.lhs).is_empty())
    return _v(_box(e, ax.lhs).subset(_box(e, ax.rhs)))


# ---------------------------------------------------------------- boxel
def _boxel_ext(e: Embedding, c) -> Box:
    """Extension of a normal-form concept in the induced interpretation, always a box."""
    if isinstance(c, Top):
        return Box.full(e.dim)
    if isinstance(c, Bot):
        return Box.empty(e.dim)
    if isinstance(c, Name):
        return e.concept(c.name)
    if isinstance(c, Nominal):
        return Box.point(e.ind(c.ind))
    if isinstance(c, And):
        return _boxel_ext(e, c.left).intersect(_boxel_ext(e, c.right))
    if isinstance(c, Exists):
        return e.role(c.role.name).preimage_box(_boxel_ext(e, c.filler))
    raise UnsupportedFragment(f"no extension for {c}")


def satisfies_boxel(e: Embedding, ax) -> Verdict:
    ax = _gate(e, ax, "boxel")
    if isinstance(ax, ConceptAssertion):
        return _v(e.concept(ax.concept.name).contains(e.ind(ax.ind)))
    if isinstance(ax, RoleAssertion):
        return _v(e.role(ax.role).apply(e.ind(ax.a)) == e.ind(ax.b))
    return _v(_boxel_ext(e, ax.lhs).subset(_boxel_ext(e, ax.rhs)))


# ---------------------------------------------------------------- box2el
def _b2_box(e: Embedding, c) -> Box:
    if isinstance(c, Top):
        return Box.full(e.dim)
    if isinstance(c, Bot):
        return Box.empty(e.dim)
    if isinstance(c, Name):
        return e.concept(c.name)[0]
    return Box.point(e.ind(c.ind)[0])


def _b2_bump(e: Embedding, c):
    if isinstance(c, (Top, Bot)):
        return zero(e.dim)
    if isinstance(c, Name):
        return e.concept(c.name)[1]
    return e.ind(c.ind)[1]


def satisfies_box2el(e: Embedding, ax) -> Verdict:
    ax = _gate(e, ax, "box2el")
    if isinstance(ax, SubRole):
        h2, t2 = e.role(ax.sup.name)
        if isinstance(ax.sub, Comp):
            return _v(e.role(ax.sub.first.name)[0].subset(h2) and e.role(ax.sub.second.name)[1].subset(t2))
        h1, t1 = e.role(ax.sub.name)
        return _v(h1.subset(h2) and t1.subset(t2))
    shape = nf_shape(ax, inverses=False)
    l, r = ax.lhs, ax.rhs
    if shape == "sub":
        return _v(_b2_box(e, l).subset(_b2_box(e, r)))
    if shape == "conj":
        return _v(_b2_box(e, l.left).intersect(_b2_box(e, l.right)).subset(_b2_box(e, r)))
    if shape == "exr":
        head, tail = e.role(r.role.name)
        a, b = _b2_box(e, l), _b2_box(e, r.filler)
        ok = a.translate(_b2_bump(e, r.filler)).subset(head) and b.translate(_b2_bump(e, l)).subset(tail)
        if b.is_empty():
            ok = ok and a.is_empty()
        return _v(ok)
    # shape == "exl": ∃r.B ⊑ A
    if isinstance(l.filler, Bot):
        return TRUE
    head, _ = e.role(l.role.name)
    return _v(head.translate(vscale(-1, _b2_bump(e, l.filler))).subset(_b2_box(e, r)))


# ---------------------------------------------------------------- boxe
def _pattern_dl(e: Embedding, ax, method: str):
    ax = _gate(e, ax, method)
    return pattern_to_dl(ax) if isinstance(ax, Pattern) else ax


def satisfies_boxe(e: Embedding, ax) -> Verdict:
    if isinstance(ax, Pattern) and ax.kind == "Composition":
        raise UnsupportedFragment("BoxE has no semantics for composition")
    ax = _pattern_dl(e, ax, "boxe")
    if isinstance(ax, ConceptAssertion):
        return _v(e.concept(ax.concept.name).contains(e.ind(ax.ind)[0]))
    if isinstance(ax, RoleAssertion):
        (ec, bc), (ed, bd) = e.ind(ax.a), e.ind(ax.b)
        h, t = e.role(ax.role)
        return _v(h.contains(vadd(ec, bd)) and t.contains(vadd(ed, bc)))
    if isinstance(ax, RoleEquiv):
        h1, t1 = e.role(ax.left.name)
        h2, t2 = e.role(ax.right.role.name)
        return _v(_box_eq(h1, t2) and _box_eq(t1, h2))
    sub, sup = ax.sub, ax.sup
    if isinstance(sub, RoleAnd):
        h1, t1 = e.role(sub.left.name)
        h2, t2 = e.role(sub.right.name)
        h3, t3 = e.role(sup.name)
        return _v(h1.intersect(h2).subset(h3) and t1.intersect(t2).subset(t3))
    h1, t1 = e.role(sub.name)
    if isinstance(sup, Inv):  # symmetry r ⊑ r⁻
        return _v(_box_eq(h1, t1))
    if isinstance(sup, NegRole):
        if isinstance(sup.role, Inv):  # asymmetry
            return _v(h1.disjoint(t1))
        h2, t2 = e.role(sup.role.name)
        return _v(h1.disjoint(h2) or t1.disjoint(t2))
    h2, t2 = e.role(sup.name)
    return _v(h1.subset(h2) and t1.subset(t2))


def _box_eq(a: Box, b: Box) -> bool:
    return a.subset(b) and b.subset(a)


# ---------------------------------------------------------------- expr
def satisfies_expr(e: Embedding, ax, row_cap: int = DEFAULT_ROW_CAP) -> Verdict:
    if isinstance(ax, ConceptAssertion):
        raise UnsupportedFragment("ExpressivE has no concept assertions")
    ax = _pattern_dl(e, ax, "expr")
    if isinstance(ax, RoleAssertion):
        return _v(e.role(ax.role).contains(e.ind(ax.a), e.ind(ax.b)))
    if isinstance(ax, RoleEquiv):
        r1, r2 = e.role(ax.left.name), e.role(ax.right.role.name).mirror()
        return _v(r1.subset(r2, row_cap) and r2.subset(r1, row_cap))
    sub, sup = ax.sub, ax.sup
    if isinstance(sub, RoleAnd):
        both = e.role(sub.left.name).intersect(e.role(sub.right.name))
        return _v(both.subset(e.role(sup.name), row_cap))
    if isinstance(sub, Comp):
        comp = e.role(sub.first.name).compose(e.role(sub.second.name), row_cap)
        return _v(comp.subset(e.role(sup.name), row_cap))
    r1 = e.role(sub.name)
    if isinstance(sup, Inv):
        m = r1.mirror()
        return _v(r1.subset(m, row_cap) and m.subset(r1, row_cap))
    if isinstance(sup, NegRole):
        other = r1.mirror() if isinstance(sup.role, Inv) else e.role(sup.role.name)
        return _v(r1.disjoint(other, row_cap))
    return _v(r1.subset(e.role(sup.name), row_cap))


# ---------------------------------------------------------------- dispatch
SATISFIERS = {
    "conv": satisfies_conv, "cone": satisfies_cone, "elem": satisfies_elem, "emel": satisfies_emel,
    "elbe": satisfies_elbe, "boxel": satisfies_boxel, "box2el": satisfies_box2el,
    "boxe": satisfies_boxe, "expr": satisfies_expr,
}


def satisfies(e: Embedding, ax) -> Verdict:
    return SATISFIERS[e.method](e, ax)


def is_model(e: Embedding, kb) -> Verdict:
    out = TRUE
    for ax in kb.axioms:
        out = out & satisfies(e, ax)
        if not out.value:
            return out
    return out


def violated(e: Embedding, kb):
    """Axioms of ``kb`` the embedding does not satisfy, in KB order."""
    return [ax for ax in kb.axioms if not satisfies(e, ax)]


__all__ = [
    "satisfies_conv", "satisfies_cone", "satisfies_elem", "satisfies_emel", "satisfies_elbe",
    "satisfies_boxel", "satisfies_box2el", "satisfies_boxe", "satisfies_expr", "satisfies",
    "is_model", "violated", "cone_concept", "SATISFIERS",
]
