import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cubegirth.errors import GenerationError
from cubegirth.girth import (
    PermGroup,
    check_law,
    closure,
    cyclic,
    derived_series,
    dihedral,
    elementary_abelian,
    evaluate_labels,
    girth_cayley,
    girth_sup_bounded,
    parse_word,
    quaternion,
    small_groups,
    symmetric,
)
from cubegirth.lazy import FreeProductTree
from oracles import cayley_girth


def oracle(group, gens):
    steps = {g for g in gens} | {group.inverse(g) for g in gens}
    return cayley_girth(list(group.elements), steps, group.multiply)


def test_cyclic_five():
    res = girth_cayley(cyclic(5))
    assert res.girth == 5
    assert len(res.witness) == 5


def test_klein_four_square():
    assert girth_cayley(elementary_abelian(2)).girth == 4


def test_involution_pair_is_acyclic():
    # Z2 with its generator: a single edge, no cycle
    assert girth_cayley(cyclic(2)).girth is None


def test_witness_evaluates_to_identity():
    for name, G in small_groups(12).items():
        res = girth_cayley(G)
        if res.girth is not None:
            assert G.is_identity(evaluate_labels(G, G.gens, G.names, res.witness)), name


def test_non_generating_set_is_rejected():
    G = symmetric(3)
    with pytest.raises(GenerationError) as exc:
        girth_cayley(G, [G.gens[0]], ["x"])
    assert exc.value.subgroup_order < 6


def test_free_group_radius_bound():
    res = girth_cayley(FreeProductTree([0, 0]), ["a", "b"], ["a", "b"], radius=8)
    assert res.girth is None and res.lower_bound == 17


@pytest.mark.parametrize("G", [dihedral(5), symmetric(3), quaternion(), cyclic(12)])
def test_all_small_generating_sets_match_oracle(G):
    elems = list(G.elements)
    for k in (1, 2):
        for S in itertools.combinations(elems, k):
            if len(closure(S, G.degree)) != G.order:
                continue
            assert girth_cayley(G, list(S)).girth == oracle(G, S), S


def test_girth_sup_matches_exhaustive_scan():
    G = dihedral(4)
    best = None
    for k in (1, 2):
        for S in itertools.combinations(G.elements, k):
            if len(closure(S, G.degree)) == G.order:
                g = oracle(G, S)
                if g is not None and (best is None or g > best):
                    best = g
    assert girth_sup_bounded(G, 2).value == best


@pytest.mark.parametrize("text", ["[a,b]", "a^6", "a b A B", "[[a,b],c]^2"])
def test_word_parser_accepts(text):
    assert parse_word(text)


@pytest.mark.parametrize("text", ["[a,b", "a^", "a$"])
def test_word_parser_rejects(text):
    with pytest.raises(ValueError):
        parse_word(text)


def test_laws():
    assert check_law(cyclic(6), "[a,b]", "exhaustive").holds
    assert not check_law(symmetric(3), "[a,b]", "exhaustive").holds
    assert check_law(symmetric(3), "a^6", "exhaustive").holds
    res = check_law(symmetric(3), "a^3", "exhaustive")
    assert not res.holds and res.counterexample is not None


def test_sampled_law_is_seeded():
    a = check_law(symmetric(4), "[a,b]^6", 50, seed=3)
    b = check_law(symmetric(4), "[a,b]^6", 50, seed=3)
    assert a == b


def test_derived_series():
    assert derived_series(symmetric(4)).orders == (24, 12, 4, 1)
    s5 = derived_series(symmetric(5))
    assert s5.orders == (120, 60) and not s5.solvable


def test_table_orders():
    t = small_groups(24)
    assert t["S4"].order == 24 and t["Q8"].order == 8 and t["Z2^4"].order == 16
    assert all(g.order <= 24 for g in t.values())


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 14), st.data())
def test_cyclic_girth_random_generators(n, data):
    G = cyclic(n)
    elems = list(G.elements)
    S = data.draw(st.lists(st.sampled_from(elems), min_size=1, max_size=3, unique=True))
    if len(closure(S, G.degree)) != n:
        return
    assert girth_cayley(G, S).girth == oracle(G, S)
