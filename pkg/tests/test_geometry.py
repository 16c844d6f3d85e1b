import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbgeom.errors import DimensionMismatch, ResourceCapError
from kbgeom.geometry import (
    INF, AffineDiagMap, AlCone, BandStack, Box, HPolyhedron, OpenBall, ball_subset, lens_subset_ball,
    row_cap_scope,
)

from oracles import box_rows, fiber_nonempty, lens_grid, vertices

# ---------------------------------------------------------------- boxes

def test_box_subset_examples():
    assert Box((0, 0), (1, 1)).subset(Box((0, 0), (2, 2)))
    assert Box((1,), (0,)).subset(Box((5,), (6,)))
    assert not Box((0, 0), (3, 1)).subset(Box((0, 0), (2, 2)))


def test_box_unbounded_corners():
    full = Box.full(2)
    assert Box((0, 0), (1, 1)).subset(full)
    assert not full.subset(Box((0, 0), (1, 1)))
    assert full.contains((10**9, -10**9))


# ---------------------------------------------------------------- balls

def test_ball_subset_examples():
    assert ball_subset(OpenBall((0, 0), 1), OpenBall((1, 0), F(5, 2)))
    assert ball_subset(OpenBall((0, 1), 0), OpenBall((9, 9), 0))
    assert not ball_subset(OpenBall((0, 0), 2), OpenBall((0, 0), 1))


def test_ball_subset_example_against_grid():
    # no grid point of the smaller ball lies outside the larger one
    a, b = OpenBall((0, 0), 1), OpenBall((1, 0), F(5, 2))
    step = F(1, 64)
    pts = [(F(i) * step, F(j) * step) for i in range(-192, 193, 4) for j in range(-192, 193, 4)]
    assert all(b.contains(p) for p in pts if a.contains(p))


def frac(lo, hi, den):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=den)


small = frac(-3, 3, 4)
radius = frac(0, 3, 4)
balls2 = st.builds(lambda x, y, r: OpenBall((x, y), r), small, small, radius)


@given(balls2, balls2, balls2)
@settings(max_examples=300, deadline=None)
def test_ball_subset_transitive(a, b, c):
    if ball_subset(a, b) and ball_subset(b, c):
        assert ball_subset(a, c)


def test_lens_examples():
    assert lens_subset_ball(OpenBall((0, 0), 2), OpenBall((2, 0), 2), OpenBall((1, 0), F(9, 5)))
    assert lens_subset_ball(OpenBall((0, 0), 1), OpenBall((5, 0), 1), OpenBall((100, 100), 1))
    assert not lens_subset_ball(OpenBall((0, 0), 2), OpenBall((0, 0), 2), OpenBall((0, 0), 1))


def test_lens_example_against_grid():
    outside, margin = lens_grid((0, 0), 2, (2, 0), 2, (1, 0), F(9, 5))
    assert not outside and margin <= 0


def random_lens(rng: random.Random):
    def c():
        return (F(rng.randint(-8, 8), 4), F(rng.randint(-8, 8), 4))
    return (OpenBall(c(), F(rng.randint(1, 10), 4)), OpenBall(c(), F(rng.randint(1, 10), 4)),
            OpenBall(c(), F(rng.randint(1, 14), 4)))


def lens_agrees(a1, a2, b, step=1 / 128) -> bool:
    got = bool(lens_subset_ball(a1, a2, b))
    outside, margin = lens_grid(a1.center, a1.radius, a2.center, a2.radius, b.center, b.radius, step)
    if got:
        return not outside
    # false: a sample lies outside b, or the sampled sup-distance is within 2 steps of r_b
    return margin is not None and (outside or margin > -2 * step)


@pytest.mark.parametrize("seed", range(20))
def test_lens_against_grid_sampling(seed):
    a1, a2, b = random_lens(random.Random(seed))
    assert lens_agrees(a1, a2, b)


def test_lens_symmetric_in_first_two_arguments():
    rng = random.Random(5)
    for _ in range(200):
        a1, a2, b = random_lens(rng)
        assert bool(lens_subset_ball(a1, a2, b)) == bool(lens_subset_ball(a2, a1, b))


def test_lens_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lens_subset_ball(OpenBall((0,), 1), OpenBall((0, 0), 1), OpenBall((0, 0), 1))


# ---------------------------------------------------------------- al-cones

def test_alcone_polar_examples():
    assert AlCone("+-").polar() == AlCone("-+")
    assert AlCone("R0").polar() == AlCone("0R")


def test_alcone_polar_is_involution():
    for comps in ("R", "+", "-", "0"):
        assert AlCone(comps).polar().polar() == AlCone(comps)


def _cones(d):
    import itertools
    return [AlCone("".join(p)) for p in itertools.product("R+-0", repeat=d)]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_alcone_meet_is_greatest_lower_bound(d):
    cones = _cones(d)
    for a in cones:
        for b in cones:
            m = a.meet(b)
            assert m.leq(a) and m.leq(b)
            for c in cones:
                if c.leq(a) and c.leq(b):
                    assert c.leq(m)


def test_alcone_leq_matches_point_containment():
    # inclusion of the underlying sets, checked on sign vectors
    pts = [(x,) for x in (-1, 0, 1)]
    for a in _cones(1):
        for b in _cones(1):
            sets = all(b.contains(p) for p in pts if a.contains(p))
            assert a.leq(b) == sets


# ---------------------------------------------------------------- polyhedra

def test_project_examples():
    tri = HPolyhedron.make(2, [((-1, 0), False, 0), ((1, 0), False, 1), ((0, -1), False, 0),
                               ((0, 1), False, 1), ((1, 1), False, 1)])
    assert tri.project([0]) == HPolyhedron.from_box((F(0),), (F(1),))
    p = HPolyhedron.make(2, [((1, -1), False, 0), ((0, 1), False, 2), ((-1, 0), False, 0)])
    assert p.project([0]) == HPolyhedron.from_box((F(0),), (F(2),))


def test_subset_and_empty_examples():
    square = HPolyhedron.from_box((F(0), F(0)), (F(1), F(1)))
    assert square.subset(HPolyhedron.make(2, [((-1, 0), False, 1)]))
    assert HPolyhedron.make(1, [((1,), False, 0), ((-1,), False, -1)]).is_empty()


def test_strict_rows():
    # 0 < x < 0 is empty, 0 <= x <= 0 is a point
    assert HPolyhedron.make(1, [((1,), True, 0), ((-1,), True, 0)]).is_empty()
    assert not HPolyhedron.make(1, [((1,), False, 0), ((-1,), False, 0)]).is_empty()
    # x < 1 and x >= 1 after eliminating y
    p = HPolyhedron.make(2, [((1, 1), True, 1), ((-1, 0), False, -1), ((0, -1), False, 0)])
    assert p.is_empty()


def test_swap_halves_example():
    p = HPolyhedron.make(2, [((1, -1), False, 0)])
    assert p.swap_halves() == HPolyhedron.make(2, [((-1, 1), False, 0)])


def test_canonical_form_ignores_row_order_and_scaling():
    rows = [((1, 2), False, 3), ((-1, 0), False, 0), ((0, -1), True, 1)]
    a = HPolyhedron.make(2, rows)
    b = HPolyhedron.make(2, [rows[2], ((2, 4), False, 6), rows[1], rows[0]])
    assert a == b


def random_poly(rng: random.Random, d: int, k: int):
    rows = [(tuple(rng.randint(-3, 3) for _ in range(d)), False, F(rng.randint(-4, 4))) for _ in range(k)]
    return rows + box_rows(d, -3, 3)


def fm_matches_vertex_oracle(rng: random.Random) -> bool:
    """Projection agrees with the vertex oracle: every projected vertex of P is in
    the projection, and every vertex of the projection (clipped to the bounding
    box, which contains the true projection) lifts back into P."""
    d = rng.randint(1, 3)
    rows = random_poly(rng, d, rng.randint(0, 8))
    keep = sorted(rng.sample(range(d), rng.randint(0, d - 1))) if d > 1 else []
    p = HPolyhedron.make(d, rows)
    proj = p.project(keep)
    for v in vertices(d, rows):
        if not proj.contains(tuple(v[i] for i in keep)):
            return False
    clipped = list(proj.rows) + box_rows(len(keep), -3, 3)
    for w in vertices(len(keep), clipped):
        if not fiber_nonempty(d, rows, keep, w):
            return False
    return bool(vertices(d, rows)) == (not p.is_empty())


@pytest.mark.parametrize("seed", range(50))
def test_projection_against_vertex_oracle(seed):
    assert fm_matches_vertex_oracle(random.Random(seed))


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_projection_membership_sound(seed):
    rng = random.Random(seed)
    d = 3
    rows = random_poly(rng, d, 5)
    p = HPolyhedron.make(d, rows)
    proj = p.project([0, 2])
    for _ in range(20):
        v = tuple(F(rng.randint(-12, 12), 4) for _ in range(d))
        if p.contains(v):
            assert proj.contains((v[0], v[2]))


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_projection_independent_of_row_order(seed):
    rng = random.Random(seed)
    rows = random_poly(rng, 3, 6)
    shuffled = rows[:]
    rng.shuffle(shuffled)
    assert HPolyhedron.make(3, rows).project([1]) == HPolyhedron.make(3, shuffled).project([1])


def test_row_cap_is_enforced():
    # many rows with both signs on x0: one elimination step needs pos * neg rows
    rows = [((1, i, 0), False, 5) for i in range(-10, 11)] + [((-1, 0, i), False, 5) for i in range(-10, 11)]
    p = HPolyhedron.make(3, rows)
    with pytest.raises(ResourceCapError):
        p.project([1, 2], row_cap=50)
    with row_cap_scope(50):
        with pytest.raises(ResourceCapError):
            p.project([1, 2])
    p.project([1, 2])


# ---------------------------------------------------------------- affine maps

def test_affine_preimage_examples():
    t = AffineDiagMap((2, 0), (0, 3))
    assert t.preimage_box(Box((0, 2), (4, 4))) == Box((0, -INF), (2, INF))
    ident = AffineDiagMap((1, 1), (0, 0))
    assert ident.preimage_box(Box((0, 1), (2, 3))) == Box((0, 1), (2, 3))
    assert AffineDiagMap((0,), (5,)).preimage_box(Box((0,), (1,))).is_empty()


def test_affine_preimage_sampled():
    t = AffineDiagMap((2, 0), (0, 3))
    box = Box((0, 2), (4, 4))
    pre = t.preimage_box(box)
    rng = random.Random(1)
    for _ in range(10_000):
        x = (F(rng.randint(-400, 400), 64), F(rng.randint(-400, 400), 64))
        assert pre.contains(x) == box.contains(t.apply(x))


@given(st.lists(st.tuples(frac(0, 3, 4), frac(-3, 3, 4)), min_size=1, max_size=3),
       st.data())
@settings(max_examples=60, deadline=None)
def test_affine_preimage_property(params, data):
    t = AffineDiagMap(tuple(p[0] for p in params), tuple(p[1] for p in params))
    d = t.dim
    lo = [data.draw(frac(-3, 3, 4)) for _ in range(d)]
    hi = [x + data.draw(frac(0, 3, 4)) for x in lo]
    box = Box(tuple(lo), tuple(hi))
    pre = t.preimage_box(box)
    for _ in range(30):
        x = tuple(data.draw(frac(-5, 5, 8)) for _ in range(d))
        assert pre.contains(x) == box.contains(t.apply(x))


# ---------------------------------------------------------------- bands

def test_symmetric_band_is_its_own_mirror():
    r = BandStack.from_bands((1,), (0,), (2,))
    assert r.mirror().subset(r) and r.subset(r.mirror())


def test_band_compose_example():
    a = BandStack.from_bands((1,), (0,), (1,))
    comp = a.compose(a)
    want = BandStack.from_bands((1,), (0,), (2,))
    assert comp.subset(want) and want.subset(comp)
    # sampled: (u, w) with |u - w| <= 2 has a middle point v
    for u in range(-3, 4):
        for w in range(-3, 4):
            mid = any(a.contains((F(u),), (F(v, 2),)) and a.contains((F(v, 2),), (F(w),)) for v in range(-8, 9))
            assert comp.contains((F(u),), (F(w),)) == mid


def test_band_disjoint_example():
    a = BandStack.from_bands((1,), (0,), (1,))
    b = BandStack.from_bands((1,), (10,), (1,))
    assert a.disjoint(b)
    assert not a.disjoint(BandStack.from_bands((1,), (1,), (1,)))
