import itertools

import pytest

from cubegirth.actions import tree_action
from cubegirth.amplify import amplify_facing, find_facing_triple, verify_family
from cubegirth.halfspaces import Halfspace
from cubegirth.lazy import FreeProductTree

T = FreeProductTree([2, 2, 2])
ACT = tree_action(T)
TRIPLE = (Halfspace(T, "a", "ab"), Halfspace(T, "b", "ba"), Halfspace(T, "", "c"))


def as_prefix_set(h: Halfspace):
    """("in", p): words with prefix p; ("out", p): words without it."""
    if len(h.head) > len(h.tail):
        return "in", h.head
    return "out", h.tail


def prefix_sets_meet(x, y) -> bool:
    (kx, px), (ky, py) = x, y
    if kx == ky == "out":
        return True
    if kx == ky == "in":
        return px.startswith(py) or py.startswith(px)
    inner, outer = (px, py) if kx == "in" else (py, px)
    return not inner.startswith(outer)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_family_sizes_and_report(n):
    fam = amplify_facing(ACT, TRIPLE, n, flip_search_len=64, radius=64)
    assert fam.complete and len(fam) == n
    assert verify_family(T, fam, 64).ok


def test_family_disjoint_by_prefix_oracle():
    fam = amplify_facing(ACT, TRIPLE, 4, flip_search_len=64, radius=64)
    sets = [as_prefix_set(h) for h in fam.halfspaces]
    for i, j in itertools.combinations(range(len(sets)), 2):
        assert not prefix_sets_meet(sets[i], sets[j]), (i, j)


def test_prefix_oracle_sanity():
    assert prefix_sets_meet(("in", "ab"), ("in", "abc"))
    assert not prefix_sets_meet(("in", "ab"), ("in", "ac"))
    assert not prefix_sets_meet(("in", "ab"), ("out", "a"))
    assert prefix_sets_meet(("in", "ab"), ("out", "ac"))


def test_transcript_claims_all_hold():
    fam = amplify_facing(ACT, TRIPLE, 4, flip_search_len=64, radius=64)
    claims = [r for r in fam.transcript if "claim" in r]
    assert len(claims) == 2 + 5 * 2
    assert all(r["holds"] for r in claims)


def test_short_search_returns_partial_family():
    fam = amplify_facing(ACT, TRIPLE, 4, flip_search_len=2, radius=64)
    assert not fam.complete and fam.failure_index is not None
    assert len(fam) < 4


def test_non_facing_triple_rejected():
    bad = (TRIPLE[0], TRIPLE[0].star(), TRIPLE[2])
    with pytest.raises(ValueError):
        amplify_facing(ACT, bad, 2)


def test_triple_search_finds_valid_triple():
    t = find_facing_triple(T, 2, 16)
    assert t is not None
    fam = amplify_facing(ACT, t, 2, flip_search_len=16, radius=32)
    assert verify_family(T, fam, 32).ok
