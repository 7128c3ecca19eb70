import random

import networkx as nx
import pytest

from cubegirth.constructions import (
    LineComplex,
    WreathGroup,
    aut_fixing_pair,
    all_automorphisms,
    build_line_complex,
    check_pair,
    find_diametric_pair,
    hypercube_pair,
    nonsolvability_evidence,
    symmetric_action_check,
    verify_wreath_law,
    wreath_demo,
)
from cubegirth.core import cycle_graph, grid, hypercube, path_graph, star
from oracles import automorphism_count, is_median_graph, nx_graph


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_diametric_pair(n):
    X, pair = hypercube_pair(n)
    assert pair.distance == n and check_pair(X, pair)


def test_grid_pair_and_missing_pair():
    X = grid(2, 3)
    assert find_diametric_pair(X).distance == X.n_hyperplanes
    assert find_diametric_pair(star(3)) is None


@pytest.mark.parametrize("X", [hypercube(2), hypercube(3), hypercube(4), star(3), grid(2, 3), path_graph(4), grid(3, 3)])
def test_automorphism_count_matches_vf2(X):
    assert len(all_automorphisms(X)) == automorphism_count(nx_graph(X))


@pytest.mark.parametrize("n,order", [(2, 2), (3, 6), (4, 24)])
def test_pair_stabilizer_is_symmetric(n, order):
    X, pair = hypercube_pair(n)
    H = aut_fixing_pair(X, pair)
    rep = symmetric_action_check(X, H)
    assert rep["order"] == order and rep["faithful"] and rep["full_symmetric"]


def test_line_window_is_median_and_distances_match():
    X, pair = hypercube_pair(2)
    line = build_line_complex(X, pair)
    W = line.copies(-2, 2)
    g = nx_graph(W)
    assert is_median_graph(g)
    d = dict(nx.all_pairs_shortest_path_length(g))
    inner = [p for p in W.vertices if -1 <= p[0] <= 1]
    for p in inner:
        assert set(line.neighbors(p)) == set(g[p])
        for q in inner:
            assert line.distance(p, q) == d[p][q]


def test_line_needs_a_diametric_pair():
    with pytest.raises(ValueError):
        build_line_complex(star(3))


def test_shift_translation_length():
    X, pair = hypercube_pair(3)
    line = build_line_complex(X, pair, radius_copies=1)
    cert = line.hyperbolicity_certificate(line.shift(1))
    assert cert["translation_length"] == 3


def test_wreath_group_acts():
    X, pair = hypercube_pair(2)
    G = WreathGroup(LineComplex(X, pair))
    rng = random.Random(5)
    pts = [(i, x) for i in range(-6, 7) for x in X.vertices if x != pair.vstar]
    for _ in range(40):
        a, b = G.random_element(rng), G.random_element(rng)
        ab = G.multiply(a, b)
        for p in pts:
            assert G.act(ab, p) == G.act(a, G.act(b, p))
        assert G.is_identity(G.multiply(a, G.inverse(a)))


def test_wreath_elements_are_isometries():
    X, pair = hypercube_pair(2)
    line = LineComplex(X, pair)
    G = WreathGroup(line)
    rng = random.Random(2)
    pts = [(i, x) for i in range(-3, 4) for x in X.vertices if x != pair.vstar]
    for _ in range(10):
        a = G.random_element(rng)
        for p in pts[::3]:
            for q in pts[::4]:
                assert line.distance(G.act(a, p), G.act(a, q)) == line.distance(p, q)


def test_law_on_two_cube_line():
    rep = verify_wreath_law(*hypercube_pair(2), trials=150, seed=0)
    assert rep.ok and rep.aut_order == 8
    assert 8 % rep.minimal_exponent == 0


def test_wrong_exponent_is_caught():
    rep = verify_wreath_law(*hypercube_pair(2), trials=50, seed=0, aut_order=1)
    assert not rep.law_holds and rep.failures


def test_solvable_stabilizer_does_not_meet_criterion():
    assert not nonsolvability_evidence(*hypercube_pair(3))["criterion_met"]


def test_demo_for_three_cube():
    out = wreath_demo(3, trials=20)
    assert out["aut_order"] == 48 and out["stabilizer"]["order"] == 6
    assert out["verdict"] is False
