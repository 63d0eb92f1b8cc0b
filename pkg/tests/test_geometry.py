from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

from vklink.complex import Complex, skeleton, suspension
from vklink.geometry import (GeometricMap, GeometryError, IntersectionKind, RetryExhausted, affinely_independent,
                             dumps_map, general_position_check, hulls_meet_outside, intersect_complementary,
                             is_embedding, lk2, lk2_detail, loads_map, moment_curve, point, random_integer_points,
                             suspension_embedding)

coord = st.integers(-20, 20)
pt2 = st.tuples(coord, coord)


def ccw(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def test_transversal_4d_example():
    s = [point(p) for p in [(0, 0, 0, 0), (4, 0, 0, 0), (0, 4, 0, 0)]]
    t = [point(p) for p in [(1, 1, -1, -1), (1, 1, 2, -1), (1, 1, -1, 2)]]
    res = intersect_complementary(s, t)
    assert res.kind is IntersectionKind.TRANSVERSAL
    assert res.point == point((1, 1, 0, 0))
    assert sum(res.lam) == 1 == sum(res.mu)


def test_intersection_empty_degenerate_and_errors():
    a = [point((0, 0)), point((2, 0))]
    assert intersect_complementary(a, [point((1, 1)), point((1, 3))]).kind is IntersectionKind.EMPTY
    # touching at an endpoint is not transversal
    assert intersect_complementary(a, [point((1, 0)), point((1, 3))]).kind is IntersectionKind.DEGENERATE
    # collinear overlap has no unique solution
    assert intersect_complementary(a, [point((1, 0)), point((3, 0))], strict=False).kind is IntersectionKind.DEGENERATE
    with pytest.raises(GeometryError):
        intersect_complementary(a, [point((0, 0, 1))])


@settings(max_examples=300, deadline=None)
@given(pt2, pt2, pt2, pt2)
def test_segment_crossing_matches_orientation_oracle(a, b, c, d):
    signs = [ccw(a, b, c), ccw(a, b, d), ccw(c, d, a), ccw(c, d, b)]
    assume(all(signs))
    expected = signs[0] * signs[1] < 0 and signs[2] * signs[3] < 0
    res = intersect_complementary([point(a), point(b)], [point(c), point(d)])
    assert res.transversal == expected
    assert hulls_meet_outside([point(a), point(b)], [point(c), point(d)], []) == expected


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(coord, coord, coord, coord), min_size=6, max_size=6))
def test_lp_agrees_with_barycentric_solve_in_4d(raw):
    pts = [point(p) for p in raw]
    assume(general_position_check(pts, 4))
    s, t = pts[:3], pts[3:]
    res = intersect_complementary(s, t)
    assume(res.kind is not IntersectionKind.DEGENERATE)
    assert hulls_meet_outside(s, t, []) == res.transversal


def test_hull_sharing_a_vertex():
    P = [point((0, 0)), point((1, 0)), point((0, 1))]
    Q = [point((0, 0)), point((-1, 0)), point((0, -1))]
    assert not hulls_meet_outside(P, Q, [0])
    Q2 = [point((0, 0)), point((1, 1)), point((-1, 2))]
    assert hulls_meet_outside(P, Q2, [0])


def test_general_position_and_moment_curve():
    assert general_position_check(moment_curve(range(1, 8), 3), 3)
    assert not general_position_check([point((0, 0)), point((1, 1)), point((2, 2))], 2)
    assert affinely_independent([point((0, 0)), point((1, 0))])
    with pytest.raises(GeometryError):
        moment_curve([1, 1], 2)


def test_random_points_deterministic_and_exhaustion():
    a = random_integer_points(6, 3, seed=9)
    assert a == random_integer_points(6, 3, seed=9)
    assert a != random_integer_points(6, 3, seed=10)
    assert general_position_check(a, 3)
    with pytest.raises(RetryExhausted):
        random_integer_points(4, 1, bound=1, retries=5)


def test_is_embedding_examples():
    K5 = skeleton(4, 1)
    f = GeometricMap(K5, 2, dict(zip(K5.vertices, random_integer_points(5, 2, seed=1))))
    assert not is_embedding(f)
    tri = skeleton(2, 2)
    assert is_embedding(GeometricMap(tri, 2, {0: point((0, 0)), 1: point((1, 0)), 2: point((0, 1))}))
    K6 = skeleton(5, 1)
    assert is_embedding(GeometricMap(K6, 3, dict(zip(K6.vertices, moment_curve(range(1, 7), 3)))))


def hopf_map(shift=0):
    K = Complex.from_labels([("g0", "g1"), ("g1", "g2"), ("g0", "g2"), ("d0", "d1"), ("d1", "d2"), ("d0", "d2")])
    coords = {"g0": (-1, -1, 0), "g1": (2, -1, 0), "g2": (-1, 2, 0),
              "d0": (shift, 0, 1), "d1": (shift, 0, -1), "d2": (shift + 5, 1, 1)}
    return K, GeometricMap.from_labels(K, coords)


def cycle(K, *labels):
    return [tuple(sorted(K.index[x] for x in e)) for e in combinations(labels, 2)]


def test_lk2_hopf_and_unlink():
    K, f = hopf_map()
    g, d = cycle(K, "g0", "g1", "g2"), cycle(K, "d0", "d1", "d2")
    assert lk2(f, g, d) == 1 == lk2(f, d, g)
    for seed in range(1, 5):
        assert lk2(f, g, d, seed=seed) == 1
    K2, f2 = hopf_map(shift=10)
    assert lk2(f2, g, d) == 0
    with pytest.raises(GeometryError):
        lk2(f, g, cycle(K, "g0", "d1", "d2"))
    with pytest.raises(GeometryError):
        lk2(f, g, [d[0], d[1]])


def test_moment_curve_K6_has_exactly_one_linked_pair():
    K6 = skeleton(5, 1)
    f = GeometricMap(K6, 3, dict(zip(K6.vertices, moment_curve(range(1, 7), 3))))
    linked = []
    for tri in combinations(range(6), 3):
        rest = tuple(v for v in range(6) if v not in tri)
        if tri < rest:
            g = list(combinations(tri, 2))
            d = list(combinations(rest, 2))
            if lk2(f, g, d):
                linked.append((tri, rest))
    assert linked == [((0, 2, 4), (1, 3, 5))]


def test_lk2_reports_apex():
    K, f = hopf_map()
    res = lk2_detail(f, cycle(K, "g0", "g1", "g2"), cycle(K, "d0", "d1", "d2"))
    assert res.attempts >= 1 and len(res.apex) == 3 and res.crossings % 2 == res.value


def test_suspension_embedding():
    base = GeometricMap(skeleton(3, 0), 1, {i: point((i,)) for i in range(4)})
    S = suspension(skeleton(3, 0))
    f = suspension_embedding(base, S)
    assert f.dim == 2 and is_embedding(f)
    assert f.by_label()["a"][-1] == 1 and f.by_label()["b"][-1] == -1
    with pytest.raises(GeometryError):
        suspension_embedding(base, S, heights=(1, 1))
    with pytest.raises(GeometryError):
        suspension_embedding(base, skeleton(4, 1))
    bad = GeometricMap(skeleton(2, 1), 1, {i: point((i,)) for i in range(3)})
    with pytest.raises(GeometryError):
        suspension_embedding(bad, suspension(skeleton(2, 1)))


def test_map_file_roundtrip():
    K, f = hopf_map()
    f = GeometricMap(K, 3, {**f.points, K.index["g0"]: (Fraction(-1, 3), Fraction(0), Fraction(7, 2))})
    text = dumps_map(f)
    back = loads_map(text, K)
    assert back.points == f.points
    assert loads_map(text).by_label() == f.by_label()
    with pytest.raises(GeometryError):
        loads_map("x 1 2\ny 1\n")
    with pytest.raises(GeometryError):
        loads_map("# dim: 2\n")
