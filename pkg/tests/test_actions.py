import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cubegirth.actions import (
    check_automorphism,
    classify_fixed_behavior,
    double_skewers,
    essentiality_witness,
    find_flipper,
    find_simultaneous_skewerer,
    flips,
    permutation_action,
    poles_prefix,
    tree_action,
)
from cubegirth.core import hypercube
from cubegirth.errors import InconclusiveError
from cubegirth.halfspaces import Halfspace, is_subset, meets
from cubegirth.lazy import FreeProductTree, ProductComplex, ball_graph
from oracles import ball_words, free_reduce

F2 = FreeProductTree([0, 0])
T3 = FreeProductTree([2, 2, 2])


def tree_set(h: Halfspace, radius: int) -> frozenset:
    """Members of a lazy tree halfspace inside a ball, by explicit distances."""
    return frozenset(w for w in ball_words("ab", radius) if F2.distance(w, h.head) < F2.distance(w, h.tail))


def edge_halfspaces(radius: int) -> list[Halfspace]:
    out = []
    for w in ball_words("ab", radius):
        for ch in "abAB":
            v = free_reduce(w + ch)
            if len(v) > len(w):
                out += [Halfspace(F2, w, v), Halfspace(F2, v, w)]
    return out


def test_tree_distances_match_word_lengths():
    for u, v in itertools.product(ball_words("ab", 2), repeat=2):
        assert F2.distance(u, v) == len(free_reduce(u[::-1].swapcase() + v))


def test_ball_sizes():
    assert ball_graph(F2, 3).n == 1 + 4 + 12 + 36
    assert ball_graph(T3, 3).n == 1 + 3 + 6 + 12


def test_lazy_relations_agree_with_ball_sets():
    hs = edge_halfspaces(1)
    R = 5  # every edge used sits within radius 2
    for a, b in itertools.product(hs, repeat=2):
        A, B = tree_set(a, R), tree_set(b, R)
        assert meets(a, b) == bool(A & B)
        assert is_subset(a, b) == (A <= B)


def test_action_is_left_multiplication():
    act = tree_action(F2)
    for w, x in itertools.product(ball_words("ab", 2), repeat=2):
        assert act.apply(w, x) == free_reduce(w + x)


def test_flipper_is_verified_on_ball():
    act = tree_action(F2)
    h = Halfspace(F2, "", "a")
    w = find_flipper(act, h, 3)
    assert w is not None
    img = act.translate(w, h)
    H, I = tree_set(h, 6), tree_set(img, 6)
    assert I < (frozenset(ball_words("ab", 6)) - H)
    assert flips(act, w, h)
    assert not flips(act, "a", h)


def test_flip_search_on_three_involutions():
    act = tree_action(T3)
    h = Halfspace(T3, "", "c").star()
    w = find_flipper(act, h, 4)
    assert w is not None and flips(act, w, h)


def test_classification_of_tree_elements():
    act = tree_action(F2)
    hyp = classify_fixed_behavior(act, "a", radius=6)
    assert hyp.kind == "no_fixed_cube_within"
    assert hyp.hyperbolic["translation_length"] == 1
    t3 = tree_action(T3)
    assert classify_fixed_behavior(t3, "a", radius=4).kind == "elliptic"
    assert classify_fixed_behavior(t3, "ab", radius=4).hyperbolic["translation_length"] == 2


def test_double_skewer_needs_nesting_and_strictness():
    act = tree_action(F2)
    h1, h2 = Halfspace(F2, "a", "aa"), Halfspace(F2, "A", "")
    cert = double_skewers(act, "aaa", h1, h2, strong=True)
    assert cert is not None and cert.strong
    assert double_skewers(act, "a", h1, h2) is None
    with pytest.raises(ValueError):
        double_skewers(act, "aaa", h2, h1)
    assert find_simultaneous_skewerer(act, [(h1, h2)], 4) == "aaa"


def test_poles_are_descending():
    act = tree_action(F2)
    fwd, back = poles_prefix(act, "aa", Halfspace(F2, "", "a"), 4)
    hs = list(fwd.halfspaces)
    assert all(is_subset(hs[i + 1], hs[i]) for i in range(len(hs) - 1))


def test_essentiality_witness_moves_far():
    act = tree_action(F2)
    h = Halfspace(F2, "", "b")
    w = essentiality_witness(act, h, 5, 6)
    assert w is not None
    assert F2.hyperplane_distance(act.translate(w, h).hyperplane, h.hyperplane) >= 5


def test_radius_budget_raises():
    far = Halfspace(F2, "a" * 9, "a" * 10)
    near = Halfspace(F2, "b", "bb")
    with pytest.raises(InconclusiveError):
        meets(far, near, radius=3)


def test_permutation_action_on_cube():
    cx = hypercube(2)
    swap = {v: (v[1], v[0]) for v in cx.vertices}
    flip = {v: (1 - v[0], v[1]) for v in cx.vertices}
    assert check_automorphism(cx, swap)
    assert not check_automorphism(cx, {(0, 0): (0, 0), (0, 1): (1, 1), (1, 1): (0, 1), (1, 0): (1, 0)})
    act = permutation_action(cx, {"s": swap, "f": flip}, involutions=["s", "f"])
    h = Halfspace(cx, (0, 0), (1, 0))
    assert flips(act, "f", h) is False  # f swaps the two sides, image equals h*, not strict


def test_product_distance_is_sum():
    P = ProductComplex([F2, T3])
    x, y = ("ab", "ca"), ("B", "b")
    assert P.distance(x, y) == F2.distance("ab", "B") + T3.distance("ca", "b")


@settings(max_examples=30, deadline=None)
@given(st.text("abAB", max_size=6), st.text("abAB", max_size=6))
def test_reduction_matches_oracle(u, v):
    assert F2.multiply(u, v) == free_reduce(free_reduce(u) + free_reduce(v))
