from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from vklink.complex import (Complex, ComplexError, build_M_J, count_isomorphic_subcomplexes, delete_simplices,
                            dumps, find_isomorphism, join, join_abc, loads, m_complex, n_simplex_count_M,
                            points, skeleton, suspension, triple_join)


def brute_M(n):
    """M^(n) straight from its displayed definition, as sets of labels."""
    base = [f"a_{i}" for i in range(2 * n + 1)]
    labels = base + ["a", "b", "c"]
    out = set()
    for k in range(1, len(labels) + 1):
        for sub in combinations(labels, k):
            apex = [x for x in sub if x in "abc"]
            rest = [x for x in sub if x not in ("a", "b", "c")]
            if len(apex) > 1 or len(rest) > n:
                continue
            if apex == ["c"] and len(rest) == n:
                continue
            out.add(frozenset(sub))
    return out


def label_sets(K):
    return {frozenset(K.label(s)) for s in K.simplices}


def test_skeleton_counts():
    assert skeleton(5, 1).f_vector == (6, 15)
    assert skeleton(4, 1).f_vector == (5, 10)
    assert skeleton(2, 0).f_vector == (3,)
    with pytest.raises(ComplexError):
        skeleton(3, 4)


def test_join_counts():
    J = join(skeleton(4, 1), points(["x", "y", "z"]))
    assert len(J) == 63
    assert J.f_vector[2] == 30
    K33 = join(skeleton(2, 0), points(["x", "y", "z"]))
    assert K33.f_vector == (6, 9)
    cone = join(skeleton(3, 2), points(["w"]))
    assert cone.dim == 3
    with pytest.raises(ComplexError):
        join(skeleton(2, 0), skeleton(2, 0))


def test_suspension_counts():
    S = suspension(skeleton(5, 1))
    assert S.f_vector == (8, 27, 30)
    assert suspension(skeleton(3, 0)).f_vector == (6, 8)
    assert suspension(Complex(frozenset(), ())).f_vector == (2,)


def test_M1_is_point_plus_K23():
    M1 = build_M_J(skeleton(2, 0), 1)
    c = M1.index["c"]
    assert M1.star(c) == ((c,),)
    K23 = join(points(["a", "b"]), points(["x", "y", "z"]))
    rest = delete_simplices(M1, [(c,)])
    assert rest.f_vector == (5, 6)
    assert find_isomorphism(rest, K23) is not None


def test_M2_counts_and_definition():
    M2 = m_complex(2)
    assert M2.f_vector == (8, 25, 20)
    assert label_sets(M2) == brute_M(2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_M_matches_brute_force_closure(n):
    M = m_complex(n)
    assert M.is_face_closed()
    assert label_sets(M) == brute_M(n)
    assert M.f_vector[n] == n_simplex_count_M(n) == 2 * comb(2 * n + 1, n)


def test_build_M_J_dimension_mismatch():
    with pytest.raises(ComplexError):
        build_M_J(skeleton(4, 1), 1)


def test_triple_join():
    assert find_isomorphism(triple_join(2), join(skeleton(2, 0), points(["x", "y", "z"]))) is not None
    assert triple_join(1).f_vector == (3,)
    T3 = triple_join(3)
    assert T3.dim == 2 and T3.f_vector[2] == 27 and len(T3.vertices) == 9


def test_delete_simplices():
    M2 = m_complex(2)
    top = M2.of_dim(2)[0]
    N = delete_simplices(M2, [top])
    assert N.f_vector == (8, 25, 19)
    K5 = skeleton(4, 1)
    assert delete_simplices(K5, [(0, 1)]).f_vector == (5, 9)
    with pytest.raises(ComplexError):
        delete_simplices(K5, [(0, 1, 2)])
    # deleting a vertex removes its star, other vertices stay
    D = delete_simplices(K5, [(0,)])
    assert D.f_vector == (4, 6) and D.is_face_closed()


def test_isomorphism_examples():
    K5 = skeleton(4, 1)
    perm = [3, 0, 4, 1, 2]
    L = Complex.from_simplices([tuple(sorted(perm[v] for v in s)) for s in K5.simplices], K5.names)
    phi = find_isomorphism(K5, L)
    assert phi == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4}  # lexicographically least for a complete graph
    K23 = join(points(["a", "b"]), points(["x", "y", "z"]))
    K33 = triple_join(2)
    assert find_isomorphism(K23, K33) is None


def test_isomorphism_is_simplex_bijection():
    M = m_complex(2)
    N = M.relabel({"a": "b", "b": "a"})
    phi = find_isomorphism(M, N)
    image = {tuple(sorted(phi[v] for v in s)) for s in M.simplices}
    assert image == set(N.simplices)


def test_join_associative_up_to_relabeling():
    A, B, C = points(["x0", "x1", "x2"]), points(["y0", "y1", "y2"]), points(["z0", "z1", "z2"])
    assert find_isomorphism(join(join(A, B), C), join(A, join(B, C))) is not None


@pytest.mark.parametrize("n,expected", [(1, 4), (2, 6)])
def test_copies_of_M_in_suspension(n, expected):
    host = suspension(skeleton(2 * n + 1, n - 1))
    count, vsets = count_isomorphic_subcomplexes(host, m_complex(n))
    assert count == expected == 2 * n + 2
    assert len(vsets) == expected


def test_copies_pattern_larger_than_host():
    assert count_isomorphic_subcomplexes(skeleton(4, 1), skeleton(5, 1))[0] == 0


def test_search_guard():
    with pytest.raises(ComplexError):
        find_isomorphism(skeleton(12, 0), skeleton(12, 0))


def test_serialization_roundtrip():
    M = m_complex(2)
    text = dumps(M)
    assert text.startswith("# vertices: a_0 a_1 a_2 a_3 a_4 a b c\n")
    lines = text.splitlines()[1:]
    assert len(lines) == len(M)
    back = loads(text)
    assert back == M
    with pytest.raises(ComplexError):
        loads("a b\n")


@st.composite
def complexes(draw):
    nv = draw(st.integers(2, 7))
    facets = draw(st.lists(st.sets(st.integers(0, nv - 1), min_size=1, max_size=4), min_size=1, max_size=8))
    return Complex.from_simplices([sorted(f) for f in facets] + [[v] for v in range(nv)], [f"v{i}" for i in range(nv)])


@settings(max_examples=60, deadline=None)
@given(complexes(), st.data())
def test_face_closure_after_delete(K, data):
    doomed = data.draw(st.lists(st.sampled_from(sorted(K.simplices)), max_size=3))
    N = delete_simplices(K, doomed)
    assert N.is_face_closed()
    assert all(not set(s) <= set(t) for s in doomed for t in N.simplices)
    assert join_abc(N).is_face_closed()
