import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubegirth.core import grid, hypercube, random_tree
from cubegirth.errors import FormatError
from cubegirth.formats import (
    load_autperm,
    load_cubegraph,
    load_permgrp,
    load_pocset,
    read_any,
    save_autperm,
    save_cubegraph,
    save_permgrp,
    save_pocset,
)
from cubegirth.girth import small_groups
from cubegirth.halfspaces import Pocset, pocset_of


def test_cubegraph_roundtrip_is_bit_exact():
    text = save_cubegraph(hypercube(3))
    assert save_cubegraph(load_cubegraph(text, literal_labels=True)) == text
    assert save_cubegraph(load_cubegraph(text)) == text


def test_comments_and_blank_lines_ignored():
    text = "# a square\ncubegraph 1\n\nv a\nv b  # first\nv c\nv d\ne a b\ne b c\ne c d\ne d a\nbase a\n"
    cx = load_cubegraph(text)
    assert cx.n == 4 and cx.base == "a"
    assert "#" not in save_cubegraph(cx)


@pytest.mark.parametrize("text,line,col", [
    ("", 1, 1),
    ("cubegraph 2\n", 1, 1),
    ("cubegraph 1\nv a\ne a b\n", 3, 5),
    ("cubegraph 1\nv a\nv a\n", 3, 3),
    ("cubegraph 1\nv a\nx a\n", 3, 1),
    ("cubegraph 1\nv a b\n", 2, 5),
    ("cubegraph 1\nv a\ne a a\n", 3, 5),
])
def test_cubegraph_errors_carry_position(text, line, col):
    with pytest.raises(FormatError) as exc:
        load_cubegraph(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_pocset_roundtrip():
    P = pocset_of(grid(2, 3))
    Q = load_pocset(save_pocset(P))
    assert np.array_equal(P.leq, Q.leq) or Q.pairs != P.pairs
    assert save_pocset(Q) == save_pocset(load_pocset(save_pocset(Q)))


def test_pocset_errors():
    with pytest.raises(FormatError) as exc:
        load_pocset("pocset 1\np x\nc x 2 x 0\n")
    assert exc.value.line == 3 and exc.value.column == 5
    with pytest.raises(FormatError):
        load_pocset("pocset 1\np x\nc x 0 x 1\nc x 1 x 0\n")


def test_permgrp_roundtrip_and_errors():
    for G in small_groups(12).values():
        text = save_permgrp(G)
        assert save_permgrp(load_permgrp(text)) == text
    with pytest.raises(FormatError) as exc:
        load_permgrp("permgrp 1\ndeg 3\ng s 0 0 1\n")
    assert exc.value.line == 3
    with pytest.raises(FormatError):
        load_permgrp("permgrp 1\ng s 0\n")


def test_autperm_roundtrip_against_complex():
    cx = hypercube(2)
    maps = {"s": {v: (v[1], v[0]) for v in cx.vertices}}
    text = save_autperm(maps)
    assert load_autperm(text, cx) == maps
    with pytest.raises(FormatError):
        load_autperm("autperm 1\na s\nm (0,0) (0,0)\n", cx)


def test_read_any_dispatch():
    assert read_any("permgrp 1\ndeg 2\ng s 1 0\n").order == 2
    with pytest.raises(FormatError):
        read_any("graph 1\n")


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40), st.integers(0, 10**6))
def test_random_tree_roundtrip(n, seed):
    text = save_cubegraph(random_tree(n, seed=seed))
    assert save_cubegraph(load_cubegraph(text, literal_labels=True)) == text
