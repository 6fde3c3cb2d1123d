"""Polytope kernel: vertex enumeration, extreme points, membership, support."""

import json
import random
from fractions import Fraction

import pytest

import oracles
from polyslice.numeric import Matrix, ONE, Scalar, Vec, ZERO, rank, rational
from polyslice.polytope import (
    DegenerateError,
    HalfSpace,
    HPolytope,
    UnboundedError,
    VPolytope,
    contains,
    extreme_points,
    from_json,
    hpolytope_from_dict,
    hpolytope_to_dict,
    lp_feasible,
    support,
    to_json,
    vertices,
)

SEED = 733


def box(dim, bound=1):
    rows = []
    for i in range(dim):
        for s in (1, -1):
            rows.append(HalfSpace(Vec.unit(dim, i) * Scalar(s), rational(bound)))
    return HPolytope(rows, dim)


def as_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def test_halfspace_rejects_zero_normal():
    with pytest.raises(ValueError):
        HalfSpace(Vec.zero(2), ONE)


def test_cube_has_eight_vertices():
    got = vertices(box(3))
    expected = {tuple(Scalar(s) for s in signs) for signs in
                [(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)]}
    assert {tuple(v) for v in got.vertices} == expected


def test_cross_polytope_vertices():
    rows = [HalfSpace(Vec([Scalar(a), Scalar(b)]), ONE) for a in (1, -1) for b in (1, -1)]
    got = vertices(HPolytope(rows, 2))
    expected = {(ONE, ZERO), (-ONE, ZERO), (ZERO, ONE), (ZERO, -ONE)}
    assert {tuple(v) for v in got.vertices} == expected


def test_vertices_are_sorted_and_cached():
    p = box(2)
    first = vertices(p)
    assert first.vertices == tuple(sorted(first.vertices))
    assert vertices(p) is first


def test_halfplane_is_unbounded():
    p = HPolytope([HalfSpace(Vec([1, 0]), ONE), HalfSpace(Vec([0, 1]), ONE)], 2)
    with pytest.raises(UnboundedError):
        vertices(p)


def test_single_point_is_degenerate():
    rows = [HalfSpace(Vec.unit(2, i) * Scalar(s), ZERO) for i in range(2) for s in (1, -1)]
    with pytest.raises(DegenerateError):
        vertices(HPolytope(rows, 2))


def test_empty_polytope_is_degenerate():
    rows = [HalfSpace(Vec([1]), -ONE), HalfSpace(Vec([-1]), ZERO)]
    with pytest.raises(DegenerateError):
        vertices(HPolytope(rows, 1))


def test_contains_cube_examples():
    p = box(3)
    assert contains(p, Vec.zero(3))
    assert contains(p, Vec([1, 1, 1]))
    assert not contains(p, Vec([rational("1001/1000"), 0, 0]))


def test_support_cube():
    value, argmax = support(vertices(box(3)), Vec([1, 1, 1]))
    assert value == 3 and argmax == Vec([1, 1, 1])


def test_support_zero_functional():
    v = vertices(box(2))
    value, argmax = support(v, Vec.zero(2))
    assert value == ZERO
    assert argmax == v.vertices[0]


def test_support_picks_lex_smallest_argmax():
    v = VPolytope((Vec([0, 1]), Vec([1, 0]), Vec([1, 1])), 2)
    value, argmax = support(v, Vec([1, 0]))
    assert value == ONE and argmax == Vec([1, 0])


def test_lp_feasible_examples():
    ok, _ = lp_feasible([HalfSpace(Vec([1]), ONE), HalfSpace(Vec([-1]), -Scalar(2))])
    assert not ok
    ok, witness = lp_feasible([HalfSpace(Vec([1]), ONE)], [(Vec([1]), ONE)])
    assert ok and witness == Vec([1])


def test_lp_feasible_barycentric_system():
    corners = [Vec([0, 0]), Vec([1, 0]), Vec([0, 1])]
    target = Vec([rational("1/4"), rational("1/4")])
    cons = [HalfSpace(-Vec.unit(3, j), ZERO) for j in range(3)]
    eqs = [(Vec([c[i] for c in corners]), target[i]) for i in range(2)]
    eqs.append((Vec([1, 1, 1]), ONE))
    ok, lam = lp_feasible(cons, eqs)
    assert ok
    mixed = Vec.zero(2)
    for weight, corner in zip(lam, corners):
        mixed = mixed + corner * weight
    assert mixed == target


def test_extreme_points_drops_interior_point():
    pts = [Vec([0, 0]), Vec([1, 0]), Vec([0, 1]), Vec([rational("1/4"), rational("1/4")])]
    got = extreme_points(pts)
    assert set(got.vertices) == {Vec([0, 0]), Vec([1, 0]), Vec([0, 1])}


def test_extreme_points_singleton():
    got = extreme_points([Vec([2, 3])])
    assert got.vertices == (Vec([2, 3]),)


def test_extreme_points_dedupes():
    got = extreme_points([Vec([1, 0]), Vec([1, 0]), Vec([-1, 0])])
    assert set(got.vertices) == {Vec([1, 0]), Vec([-1, 0])}


def test_vpolytope_rejects_duplicates_and_mixed_lengths():
    with pytest.raises(ValueError):
        VPolytope((Vec([1, 0]), Vec([1, 0])), 2)
    with pytest.raises(ValueError):
        VPolytope((Vec([1, 0]), Vec([1, 0, 0])), 2)


def random_polytope(rng, dim):
    """Random bounded full-dimensional polytope: a box plus a few cuts with
    the origin strictly inside (every offset is at least 1)."""
    rows = list(box(dim, 2).halfspaces)
    extra = rng.randint(1, max(1, 12 - len(rows)))
    for _ in range(extra):
        while True:
            normal = [Scalar(rng.randint(-3, 3)) for _ in range(dim)]
            if any(c != 0 for c in normal):
                break
        rows.append(HalfSpace(Vec(normal), Scalar(rng.randint(1, 3))))
    return HPolytope(rows[: 12], dim)


def test_vertices_match_independent_subset_oracle():
    rng = random.Random(SEED)
    for _ in range(50):
        dim = rng.randint(2, 4)
        poly = random_polytope(rng, dim)
        got = sorted(tuple(as_fraction(c) for c in v) for v in vertices(poly).vertices)
        rows = [(tuple(as_fraction(c) for c in h.a), as_fraction(h.b)) for h in poly.halfspaces]
        assert got == oracles.enum_vertices(rows, dim)


def test_vertex_invariants_on_random_polytopes():
    rng = random.Random(SEED + 1)
    for _ in range(25):
        dim = rng.randint(2, 4)
        poly = random_polytope(rng, dim)
        verts = vertices(poly)
        for v in verts.vertices:
            assert contains(poly, v)
            tight = [h.a for h in poly.halfspaces if h.a.dot(v) == h.b]
            assert rank(Matrix(tight)) == dim
        assert set(extreme_points(verts.vertices).vertices) == set(verts.vertices)


def test_symmetric_polytopes_have_symmetric_vertices():
    rng = random.Random(SEED + 2)
    for _ in range(10):
        dim = rng.randint(2, 3)
        rows = list(box(dim).halfspaces)
        for _ in range(2):
            while True:
                normal = [Scalar(rng.randint(-2, 2)) for _ in range(dim)]
                if any(c != 0 for c in normal):
                    break
            b = Scalar(rng.randint(1, 3))
            rows.append(HalfSpace(Vec(normal), b))
            rows.append(HalfSpace(-Vec(normal), b))
        verts = vertices(HPolytope(rows, dim))
        have = set(verts.vertices)
        assert all(-v in have for v in have)


def test_hpolytope_json_round_trip():
    p = box(2)
    data = json.loads(to_json(p))
    assert data["dim"] == 2
    assert data["halfspaces"][0]["b"] == "1/1"
    back = from_json(to_json(p))
    assert back == p


def test_vpolytope_json_round_trip():
    v = vertices(box(2))
    back = from_json(to_json(v))
    assert back.vertices == v.vertices
    assert json.loads(to_json(v))["vertices"][0][0] == "-1/1"


def test_hpolytope_dict_round_trip_preserves_rationals():
    p = HPolytope([HalfSpace(Vec(["1/3", "-2/7"]), rational("5/11")),
                   HalfSpace(Vec(["-1/3", "2/7"]), rational("5/11")),
                   HalfSpace(Vec([0, 1]), ONE),
                   HalfSpace(Vec([0, -1]), ONE)], 2)
    assert hpolytope_from_dict(hpolytope_to_dict(p)) == p


def test_base_extension_matches_scratch_enumeration():
    rng = random.Random(SEED + 3)
    for _ in range(12):
        dim = rng.randint(2, 3)
        base = random_polytope(rng, dim)
        vertices(base)
        while True:
            normal = [Scalar(rng.randint(-2, 2)) for _ in range(dim)]
            if any(c != 0 for c in normal):
                break
        cut = HalfSpace(Vec(normal), Scalar(rng.randint(1, 2)))
        rows = tuple(base.halfspaces) + (cut,)
        extended = HPolytope(rows, dim, _base=(base, len(base.halfspaces)))
        scratch = HPolytope(rows, dim)
        try:
            got = vertices(extended).vertices
        except DegenerateError:
            with pytest.raises(DegenerateError):
                vertices(scratch)
            continue
        assert got == vertices(scratch).vertices
