"""Independent oracles used by the tests.

None of these call into the code under test: they solve small linear systems,
sample grids, or enumerate interpretations directly.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

F = Fraction


# ---------------------------------------------------------------- linear algebra
def solve(a: List[List[Fraction]], b: List[Fraction]) -> Optional[Tuple[Fraction, ...]]:
    """Unique solution of a square system, or None when it is singular."""
    n = len(a)
    m = [list(map(F, row)) + [F(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                k = m[r][col] / m[col][col]
                m[r] = [x - k * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def satisfies_rows(rows, v) -> bool:
    for a, strict, b in rows:
        lhs = sum((F(x) * F(y) for x, y in zip(a, v)), F(0))
        if lhs > b or (strict and lhs == b):
            return False
    return True


def vertices(dim: int, rows) -> List[Tuple[Fraction, ...]]:
    """Vertices of {x : rows}, treating every row as non-strict.

    For a bounded polyhedron this set is empty exactly when the polyhedron is."""
    rows = [(tuple(map(F, a)), False, F(b)) for a, _, b in rows]
    if dim == 0:
        return [()] if all(b >= 0 for _, _, b in rows) else []
    out = set()
    for combo in itertools.combinations(rows, dim):
        x = solve([list(r[0]) for r in combo], [r[2] for r in combo])
        if x is not None and satisfies_rows(rows, x):
            out.add(x)
    return sorted(out)


def fiber_nonempty(dim: int, rows, keep: Sequence[int], point) -> bool:
    """Is there x with x[keep] = point satisfying the (bounded) rows?"""
    free = [i for i in range(dim) if i not in keep]
    sub = []
    for a, s, b in rows:
        fixed = sum((F(a[k]) * F(p) for k, p in zip(keep, point)), F(0))
        sub.append((tuple(a[i] for i in free), False, F(b) - fixed))
    return bool(vertices(len(free), sub))


def box_rows(dim: int, lo, hi):
    rows = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows.append((tuple(e), False, F(hi)))
        e = [0] * dim
        e[i] = -1
        rows.append((tuple(e), False, -F(lo)))
    return rows


# ---------------------------------------------------------------- lens sampling
def lens_grid(c1, r1, c2, r2, cb, rb, step: float = 1 / 128):
    """Grid points of the open lens ball(c1,r1) ∩ ball(c2,r2), plus their
    distances to cb. Returns (any point strictly outside closed b, max distance - rb)."""
    r1f, r2f, rbf = float(r1), float(r2), float(rb)
    xs = np.arange(float(c1[0]) - r1f, float(c1[0]) + r1f + step, step)
    ys = np.arange(float(c1[1]) - r1f, float(c1[1]) + r1f + step, step)
    X, Y = np.meshgrid(xs, ys)
    d1 = (X - float(c1[0])) ** 2 + (Y - float(c1[1])) ** 2
    d2 = (X - float(c2[0])) ** 2 + (Y - float(c2[1])) ** 2
    inside = (d1 < r1f ** 2 - 1e-12) & (d2 < r2f ** 2 - 1e-12)
    if not inside.any():
        return False, None
    db = np.sqrt((X[inside] - float(cb[0])) ** 2 + (Y[inside] - float(cb[1])) ** 2)
    return bool((db > rbf + 1e-9).any()), float(db.max()) - rbf


# ---------------------------------------------------------------- role patterns
def _all_relations(n: int) -> np.ndarray:
    """Every n x n boolean matrix, shape (2**(n*n), n, n)."""
    k = n * n
    bits = ((np.arange(2 ** k)[:, None] >> np.arange(k)) & 1).astype(bool)
    return bits.reshape(-1, n, n)


def pattern_truth(kind: str, roles: Tuple[str, ...], rel: Dict[str, np.ndarray]) -> np.ndarray:
    """Truth of a role pattern in every interpretation of a batch (batch, n, n)."""
    def sub(x, y):
        return ~(x & ~y).any(axis=(1, 2))

    def disj(x, y):
        return ~(x & y).any(axis=(1, 2))

    T = lambda x: np.swapaxes(x, 1, 2)  # noqa: E731
    r = rel[roles[0]]
    if kind == "Symmetry":
        return sub(r, T(r))
    if kind == "Asymmetry":
        return disj(r, T(r))
    s = rel[roles[1]]
    if kind == "Inversion":
        return sub(r, T(s)) & sub(T(s), r)
    if kind == "Hierarchy":
        return sub(r, s)
    if kind == "Exclusion":
        return disj(r, s)
    t = rel[roles[2]]
    if kind == "Intersection":
        return sub(r & s, t)
    if kind == "Composition":
        comp = np.einsum("bij,bjk->bik", r.astype(np.int64), s.astype(np.int64)) > 0
        return sub(comp, t)
    raise ValueError(kind)


def pattern_truth_table(patterns, roles: Sequence[str], n: int = 3) -> np.ndarray:
    """(len(patterns), #interpretations) truth table over all interpretations of
    ``roles`` on an n-element domain."""
    base = _all_relations(n)
    m = len(base)
    grids = np.meshgrid(*[np.arange(m)] * len(roles), indexing="ij")
    idx = [g.ravel() for g in grids]
    rel = {r: base[i] for r, i in zip(roles, idx)}
    return np.stack([pattern_truth(p.kind, p.roles, rel) for p in patterns])


# ---------------------------------------------------------------- classical semantics
def brute_concept(c, domain, conc: Dict[str, FrozenSet], role: Dict[str, FrozenSet], ind) -> FrozenSet:
    """Concept extension computed by direct recursion over the syntax."""
    name = type(c).__name__
    if name == "Top":
        return frozenset(domain)
    if name == "Bot":
        return frozenset()
    if name == "Name":
        return conc.get(c.name, frozenset())
    if name == "Nominal":
        return frozenset({ind[c.ind]})
    if name == "Not":
        return frozenset(domain) - brute_concept(c.arg, domain, conc, role, ind)
    if name == "And":
        return brute_concept(c.left, domain, conc, role, ind) & brute_concept(c.right, domain, conc, role, ind)
    if name == "Or":
        return brute_concept(c.left, domain, conc, role, ind) | brute_concept(c.right, domain, conc, role, ind)
    pairs = brute_role(c.role, role)
    fill = brute_concept(c.filler, domain, conc, role, ind)
    if name == "Exists":
        return frozenset(x for x in domain if any((x, y) in pairs for y in fill))
    return frozenset(x for x in domain if all(y in fill for (x2, y) in pairs if x2 == x))


def brute_role(r, role) -> FrozenSet:
    name = type(r).__name__
    if name == "RName":
        return role.get(r.name, frozenset())
    if name == "Inv":
        return frozenset((y, x) for x, y in brute_role(r.role, role))
    raise ValueError(r)
