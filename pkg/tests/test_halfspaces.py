import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cubegirth.core import find_isomorphism, hypercube, random_tree
from cubegirth.errors import PocsetError, RepresentationError
from cubegirth.core import cycle_graph
from cubegirth.halfspaces import (
    Halfspace,
    Pocset,
    dual_complex,
    hyperplanes,
    is_strongly_separated,
    is_subset,
    meets,
    pocset_of,
    quadrant_classify,
    relation_matrix,
    theta,
    vertex_ultrafilter,
)
from corpus import median_corpus
from oracles import crosses, halfspace_sets, nx_graph, quadrants, strongly_separated, theta_classes, wall_list


@pytest.fixture(scope="module")
def small_corpus():
    return {k: v for k, v in median_corpus().items() if v.n <= 40}


def test_hyperplanes_match_theta_classes(small_corpus):
    for name, cx in small_corpus.items():
        mine = {frozenset(frozenset(e) for e in hp.edges) for hp in hyperplanes(cx)}
        ref = {frozenset(c) for c in theta_classes(nx_graph(cx))}
        assert mine == ref, name


def test_odd_cycle_has_no_hyperplane_structure():
    with pytest.raises(RepresentationError):
        hyperplanes(cycle_graph(5))


def test_halfspace_vertex_sets_match_oracle(small_corpus):
    for name, cx in small_corpus.items():
        g = nx_graph(cx)
        for k in range(cx.n_hyperplanes):
            h = Halfspace.from_key(cx, k, 0)
            inside, outside = halfspace_sets(g, h.tail, h.head)
            assert h.vertex_set() == inside, name
            assert h.star().vertex_set() == outside, name


def test_quadrants_and_strong_separation_match_oracle(small_corpus):
    for name, cx in small_corpus.items():
        g = nx_graph(cx)
        V = frozenset(cx.vertices)
        walls = wall_list(g)
        # map package hyperplane ids to oracle wall indices
        idx = {}
        for k in range(cx.n_hyperplanes):
            s = Halfspace.from_key(cx, k, 0).vertex_set()
            idx[k] = next(i for i, w in enumerate(walls) if s in (w[0], w[1]))
        for i, j in itertools.combinations(range(cx.n_hyperplanes), 2):
            hi, hj = Halfspace.from_key(cx, i, 0), Halfspace.from_key(cx, j, 0)
            rel = quadrant_classify(cx, hi, hj)
            assert rel.quadrants == quadrants(hi.vertex_set(), hj.vertex_set(), V), (name, i, j)
            assert rel.transverse == crosses(walls, V, idx[i], idx[j])
            assert is_strongly_separated(cx, hi, hj) == strongly_separated(walls, V, idx[i], idx[j]), (name, i, j)


def test_subset_and_meets_against_sets():
    cx = random_tree(12, seed=7)
    hs = [Halfspace.from_key(cx, k, s) for k in range(cx.n_hyperplanes) for s in (0, 1)]
    for a, b in itertools.product(hs, repeat=2):
        assert is_subset(a, b) == (a.vertex_set() <= b.vertex_set())
        assert meets(a, b) == bool(a.vertex_set() & b.vertex_set())


def test_relation_matrix_on_square():
    m = relation_matrix(hypercube(2))
    assert m[0][1] == m[1][0] == "transverse"


def test_path_only_outer_hyperplanes_strongly_separated():
    from cubegirth.core import path_graph

    cx = path_graph(4)  # three hyperplanes in a row
    pairs = [(i, j) for i, j in itertools.combinations(range(3), 2) if is_strongly_separated(cx, (i, 0), (j, 0))]
    assert len(pairs) == 1
    i, j = pairs[0]
    assert cx.hyperplane_distance(i, j) == 1  # carriers one edge apart


def test_duality_roundtrip_with_theta(small_corpus):
    for name, cx in small_corpus.items():
        D = dual_complex(pocset_of(cx))
        assert D.n == cx.n
        assert {frozenset((theta(cx, u), theta(cx, v))) for u, v in cx.edges()} == {frozenset(e) for e in D.edges()}, name
        assert find_isomorphism(cx, D) is not None


def test_vertex_ultrafilters_are_distinct():
    cx = hypercube(3)
    ufs = {vertex_ultrafilter(cx, v).halfspaces for v in cx.vertices}
    assert len(ufs) == 8
    assert all(vertex_ultrafilter(cx, v).consistency for v in cx.vertices)


def test_pocset_rejects_bad_containment():
    with pytest.raises(PocsetError):
        Pocset(["x"], [(("x", 0), ("x", 1)), (("x", 1), ("x", 0))])


def test_two_nested_pairs_give_a_path():
    P = Pocset(["x", "y"], [(("x", 0), ("y", 0))])
    D = dual_complex(P)
    assert D.n == 3 and len(D.edges()) == 2


def test_free_pocset_gives_cube():
    D = dual_complex(Pocset(["x", "y", "z"]))
    assert find_isomorphism(D, hypercube(3)) is not None


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 25), st.integers(0, 10**6))
def test_tree_hyperplanes_equal_edges(n, seed):
    cx = random_tree(n, seed=seed)
    assert len(hyperplanes(cx)) == n - 1
    assert find_isomorphism(cx, dual_complex(pocset_of(cx))) is not None
