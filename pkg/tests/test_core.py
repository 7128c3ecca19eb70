import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from cubegirth.core import (
    CubeComplexGraph,
    cycle_graph,
    detect_cubes,
    find_isomorphism,
    hypercube,
    irreducible_factorization,
    link_is_flag,
    median,
    product,
    random_tree,
    validate_median,
)
from cubegirth.errors import ValidationError
from corpus import median_corpus
from oracles import is_median_graph, medians, all_distances, nx_graph


@pytest.fixture(scope="module")
def corpus():
    return median_corpus()


def test_corpus_is_median_by_brute_force(corpus):
    for name, cx in corpus.items():
        if cx.n > 30:
            continue
        assert is_median_graph(nx_graph(cx)), name
        assert validate_median(cx).is_median, name


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_cycles_fail_with_checkable_triple(n):
    cx = cycle_graph(n)
    rep = validate_median(cx)
    assert not rep.is_median
    g = nx_graph(cx)
    assert len(medians(g, all_distances(g), *rep.counterexample)) != 1


def test_c3_counterexample_is_its_vertices():
    rep = validate_median(cycle_graph(3))
    assert sorted(rep.counterexample) == [0, 1, 2]


def test_k23_has_two_medians():
    g = nx.complete_bipartite_graph(2, 3)
    cx = CubeComplexGraph(list(g.edges()))
    rep = validate_median(cx)
    assert not rep.is_median
    assert rep.median_count == 2


def test_even_cycle_six_is_not_median():
    assert not validate_median(cycle_graph(6)).is_median
    assert validate_median(cycle_graph(4)).is_median


def test_disconnected_graph_rejected():
    cx = CubeComplexGraph([(0, 1), (2, 3)])
    with pytest.raises(ValidationError):
        validate_median(cx)


def test_median_of_cube_corners():
    cx = hypercube(3)
    a, b, c = (0, 0, 0), (1, 1, 0), (0, 1, 1)
    assert median(cx, a, b, c) == (0, 1, 0)


def test_flag_links(corpus):
    for name, cx in corpus.items():
        if cx.n <= 64:
            assert all(link_is_flag(cx, v) for v in cx.vertices), name


def test_cube_counts_match_binomials():
    from math import comb

    cx = hypercube(4)
    for k in range(5):
        assert len(detect_cubes(cx, k)) == comb(4, k) * 2 ** (4 - k)


def test_factorization_of_product():
    cx = product(product(hypercube(1), random_tree(5, seed=3)), random_tree(4, seed=4))
    parts = irreducible_factorization(cx)
    assert sorted(p.n for p in parts) == [2, 4, 5]


def test_isomorphism_is_checked_map():
    a = hypercube(3)
    b = a.relabel({v: "".join(map(str, v)) for v in a.vertices})
    f = find_isomorphism(a, b)
    assert f is not None
    assert all(frozenset((f[u], f[v])) in {frozenset(e) for e in b.edges()} for u, v in a.edges())


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10**6))
def test_random_trees_are_median(n, seed):
    assert validate_median(random_tree(n, seed=seed)).is_median


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 9), st.integers(0, 10**6))
def test_random_small_graphs_agree_with_oracle(n, seed):
    g = nx.gnp_random_graph(n, 0.45, seed=seed)
    if not nx.is_connected(g) or g.number_of_edges() == 0:
        return
    cx = CubeComplexGraph(list(g.edges()), vertices=list(g.nodes()))
    assert validate_median(cx).is_median == is_median_graph(g)
