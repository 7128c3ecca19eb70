"""Hyperplanes, halfspaces and the relations between them.

A halfspace is addressed by an oriented edge ``(tail, head)``: it is the side
of that edge's hyperplane containing ``head``.  Membership of a vertex ``x``
is ``d(x, head) < d(x, tail)``, which works verbatim on lazily generated
spaces.  On a :class:`~cubegirth.core.CubeComplexGraph` the side is also
available as a boolean vertex mask.

Emptiness questions on lazy spaces are settled exactly by gate descent:
halfspaces are convex, so two halfspaces meet iff the gate (nearest point)
of one head onto the other halfspace lies in the first one.  The largest
distance from the basepoint touched by that descent is the radius consumed.

Example
-------
>>> from cubegirth import core, halfspaces as hs
>>> p4 = core.path_graph(4)
>>> a, b = hs.halfspace_pair(p4, 0)[1], hs.halfspace_pair(p4, 2)[0]
>>> hs.quadrant_classify(p4, a, b).base
'nested'
>>> hs.is_strongly_separated(p4, 0, 2)
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .core import CubeComplexGraph
from .errors import ChainError, InconclusiveError, PocsetError, RepresentationError

__all__ = [
    "Hyperplane",
    "Halfspace",
    "PairRelation",
    "UltrafilterView",
    "Pocset",
    "DescendingChain",
    "ChainDisjointness",
    "hyperplanes",
    "halfspace_pair",
    "meets",
    "is_subset",
    "is_strict_subset",
    "quadrant_classify",
    "is_transverse",
    "is_separated",
    "is_strongly_separated",
    "facing_tuple_check",
    "vertex_ultrafilter",
    "theta",
    "pocset_of",
    "dual_complex",
    "make_chain",
    "chain_disjointness",
    "hyperplane_distance",
]


def _explicit(space) -> bool:
    return isinstance(space, CubeComplexGraph)


@dataclass(frozen=True)
class Hyperplane:
    """One square-relation class of edges.

    ``rep`` is a representative edge ``(u, v)`` with ``u`` on side 0.
    """

    id: int
    edges: tuple
    rep: tuple


class Halfspace:
    """The side of the hyperplane of edge ``tail -- head`` that contains ``head``."""

    __slots__ = ("space", "tail", "head", "key")

    def __init__(self, space, tail, head):
        self.space = space
        self.tail = tail
        self.head = head
        self.key = space.halfspace_key(tail, head)

    @classmethod
    def from_key(cls, space, hyperplane, side: int) -> "Halfspace":
        t, h = space.key_edge(hyperplane, side)
        return cls(space, t, h)

    @property
    def hyperplane(self):
        return self.key[0]

    @property
    def side(self) -> int:
        return self.key[1]

    def star(self) -> "Halfspace":
        return Halfspace(self.space, self.head, self.tail)

    def translate(self, auto) -> "Halfspace":
        """Image under a vertex map (any callable automorphism)."""
        return Halfspace(self.space, auto(self.tail), auto(self.head))

    @property
    def mask(self) -> np.ndarray:
        if not _explicit(self.space):
            raise TypeError("vertex masks exist only on explicit complexes")
        row = self.space.side0[self.key[0]]
        return row if self.key[1] == 0 else ~row

    def vertex_set(self) -> frozenset:
        if _explicit(self.space):
            return frozenset(self.space.vertices[i] for i in np.flatnonzero(self.mask))
        raise TypeError("vertex sets of lazy halfspaces are infinite")

    def contains(self, x) -> bool:
        sp = self.space
        if _explicit(sp):
            return bool(self.mask[sp.index[x]])
        return sp.distance(x, self.head) < sp.distance(x, self.tail)

    __contains__ = contains

    def __eq__(self, other) -> bool:
        return isinstance(other, Halfspace) and other.space is self.space and other.key == self.key

    def __hash__(self) -> int:
        return hash((id(self.space), self.key))

    def __repr__(self) -> str:
        return f"Halfspace({self.key[0]!r}, side={self.key[1]})"


def _as_halfspace(space, h) -> Halfspace:
    if isinstance(h, Halfspace):
        return h
    if isinstance(h, tuple) and len(h) == 2 and _explicit(space) and isinstance(h[0], (int, np.integer)):
        return Halfspace.from_key(space, int(h[0]), int(h[1]))
    return Halfspace.from_key(space, h, 0)


# -- hyperplane extraction ---------------------------------------------------


def hyperplanes(cx: CubeComplexGraph) -> list[Hyperplane]:
    """Square-relation classes, each checked to split the graph in two.

    Raises :class:`RepresentationError` when removing a class does not leave
    exactly two components.
    """
    out = []
    n = cx.n
    for k, eids in enumerate(cx.class_edges):
        cut = set(eids)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e, (i, j) in enumerate(cx.edge_index):
            if e not in cut:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        roots = {find(x) for x in range(n)}
        sides_ok = all(find(i) != find(j) for i, j in (cx.edge_index[e] for e in eids))
        if len(roots) != 2 or not sides_ok:
            raise RepresentationError(
                f"removing hyperplane {k} leaves {len(roots)} components; not a CAT(0) skeleton"
            )
        edges = tuple(
            tuple(cx.vertices[x] for x in sorted(cx.edge_index[e], key=lambda y: not cx.side0[k, y]))
            for e in eids
        )
        out.append(Hyperplane(k, edges, edges[0]))
    return out


def halfspace_pair(cx: CubeComplexGraph, hyperplane) -> tuple[Halfspace, Halfspace]:
    """Sides 0 and 1; side 0 holds the least vertex."""
    k = hyperplane.id if isinstance(hyperplane, Hyperplane) else int(hyperplane)
    if not 0 <= k < cx.n_hyperplanes:
        raise ValueError(f"no hyperplane {k}")
    return Halfspace.from_key(cx, k, 0), Halfspace.from_key(cx, k, 1)


# -- exact relations via gates -------------------------------------------------


def _gate(h: Halfspace, x) -> tuple[object, list]:
    """Nearest vertex of ``h`` to ``x`` and the descent path."""
    sp = h.space
    if h.contains(x):
        return x, [x]
    y = h.head
    dy = sp.distance(y, x)
    path = [y]
    while True:
        for z in sp.neighbors(y):
            if sp.distance(z, x) < dy and h.contains(z):
                y, dy = z, dy - 1
                path.append(y)
                break
        else:
            return y, path


def _consumed(space, points: Iterable) -> int:
    base = space.basepoint
    return max((space.distance(base, p) for p in points), default=0)


@lru_cache(maxsize=1 << 18)
def _meet_witness(a: Halfspace, b: Halfspace) -> tuple[object | None, int]:
    sp = a.space
    if _explicit(sp):
        both = np.flatnonzero(a.mask & b.mask)
        return (sp.vertices[int(both[0])] if both.size else None), 0
    touched = [a.tail, a.head, b.tail, b.head]
    if a.contains(b.head):
        return b.head, _consumed(sp, touched)
    if b.contains(a.head):
        return a.head, _consumed(sp, touched)
    g, path = _gate(a, b.head)
    touched.extend(path)
    return (g if b.contains(g) else None), _consumed(sp, touched)


def _check_budget(consumed: int, radius: int | None, what: str) -> None:
    if radius is not None and consumed > radius:
        raise InconclusiveError(f"{what} needs radius {consumed} > {radius}", radius=consumed)


def meet_witness(a: Halfspace, b: Halfspace, radius: int | None = None) -> tuple[object | None, int]:
    """A common vertex of ``a`` and ``b`` (or None) plus the radius consumed."""
    if a.space is not b.space:
        raise ValueError("halfspaces live in different spaces")
    w, used = _meet_witness(a, b)
    _check_budget(used, radius, f"deciding {a} vs {b}")
    return w, used


def meets(a: Halfspace, b: Halfspace, radius: int | None = None) -> bool:
    return meet_witness(a, b, radius)[0] is not None


def is_subset(a: Halfspace, b: Halfspace, radius: int | None = None) -> bool:
    """``a`` is contained in ``b`` (at vertex level)."""
    if a == b:
        return True
    return not meets(a, b.star(), radius)


def is_strict_subset(a: Halfspace, b: Halfspace, radius: int | None = None) -> bool:
    return a != b and is_subset(a, b, radius)


def union_contains(a: Halfspace, parts: Sequence[Halfspace], radius: int | None = None) -> bool:
    """Whether ``a`` lies inside the union of ``parts``.

    By the Helly property for convex sets, ``a`` minus the union is empty iff
    two members of ``{a, p1*, p2*, ...}`` are already disjoint.
    """
    sets = [a] + [p.star() for p in parts]
    return any(not meets(x, y, radius) for x, y in itertools.combinations(sets, 2))


# -- pair relations ------------------------------------------------------------


@dataclass(frozen=True)
class PairRelation:
    """Relation between two halfspaces ``h1``, ``h2`` (and their hyperplanes).

    ``quadrants[(s1, s2)]`` tells whether ``h1^s1`` meets ``h2^s2`` where
    exponent 1 means the complement.  ``empty_quadrant`` names the empty
    one when the hyperplanes are not transverse.
    """

    base: str
    empty_quadrant: tuple[int, int] | None
    quadrants: dict
    separated: bool
    strongly_separated: bool
    square_witness: tuple | None = None
    separator: object | None = None
    radius: int = 0

    @property
    def transverse(self) -> bool:
        return self.base == "transverse"


def _quadrants(a: Halfspace, b: Halfspace, radius):
    quads, used = {}, 0
    for s1, s2 in itertools.product((0, 1), repeat=2):
        x = a if s1 == 0 else a.star()
        y = b if s2 == 0 else b.star()
        w, r = meet_witness(x, y, radius)
        quads[(s1, s2)] = w is not None
        used = max(used, r)
    return quads, used


def is_transverse(space, h1, h2, radius: int | None = None) -> bool:
    a, b = _as_halfspace(space, h1), _as_halfspace(space, h2)
    if a.hyperplane == b.hyperplane:
        return False
    if _explicit(space):
        return (a.hyperplane, b.hyperplane) in space.transverse_pairs
    return all(_quadrants(a, b, radius)[0].values())


def _square_witness(cx: CubeComplexGraph, k1: int, k2: int) -> tuple | None:
    eid, cls = cx.edge_id, cx.edge_class
    for v, a, c, b in cx.squares:
        ks = {int(cls[eid[(v, a)]]), int(cls[eid[(v, b)]])}
        if ks == {k1, k2}:
            return tuple(cx.vertices[x] for x in (v, a, c, b))
    return None


def _separators_explicit(cx: CubeComplexGraph, k1: int, k2: int) -> list[int]:
    i1 = cx.edge_index[cx.class_edges[k1][0]][0]
    i2 = cx.edge_index[cx.class_edges[k2][0]][0]
    trans = cx.transverse_sets
    out = []
    for k in range(cx.n_hyperplanes):
        if k in (k1, k2) or k in trans[k1] or k in trans[k2]:
            continue
        if cx.side0[k, i1] != cx.side0[k, i2]:
            out.append(k)
    return out


def _geodesic(space, u, v) -> list:
    path = [u]
    d = space.distance(u, v)
    while d:
        x = path[-1]
        for y in space.neighbors(x):
            if space.distance(y, v) == d - 1:
                path.append(y)
                d -= 1
                break
        else:  # pragma: no cover - impossible in a connected graph
            raise RepresentationError("geodesic walk got stuck")
    return path


def _first_separator_lazy(space, a: Halfspace, b: Halfspace, radius):
    """First hyperplane on a geodesic between the two carriers that separates them."""
    pairs = [(x, y) for x in (a.tail, a.head) for y in (b.tail, b.head)]
    p, q = min(pairs, key=lambda t: space.distance(*t))
    path = _geodesic(space, p, q)
    used = _consumed(space, path)
    _check_budget(used, radius, "separator scan")
    for x, y in zip(path, path[1:]):
        k = Halfspace(space, x, y)
        if k.hyperplane in (a.hyperplane, b.hyperplane):
            continue
        # k must hold all of a's edge on its x-side and b's edge on its y-side
        ks = k.star()
        if not (ks.contains(a.tail) and ks.contains(a.head)):
            continue
        if not (k.contains(b.tail) and k.contains(b.head)):
            continue
        if is_transverse(space, k, a, radius) or is_transverse(space, k, b, radius):
            continue
        return k.hyperplane, used
    return None, used


def quadrant_classify(space, h1, h2, radius: int | None = None) -> PairRelation:
    """Classify two halfspaces by the emptiness pattern of their quadrants.

    ``h1``/``h2`` may be :class:`Halfspace` objects or, on explicit
    complexes, hyperplane ids (meaning side 0).
    """
    a, b = _as_halfspace(space, h1), _as_halfspace(space, h2)
    if a.hyperplane == b.hyperplane:
        raise ValueError("quadrant_classify needs two distinct hyperplanes")
    quads, used = _quadrants(a, b, radius)
    empty = [q for q, ok in quads.items() if not ok]
    square = None
    if not empty:
        base = "transverse"
        if _explicit(space):
            square = _square_witness(space, a.hyperplane, b.hyperplane)
            if square is None:
                raise RepresentationError("transverse quadrants but no square witness")
        return PairRelation(base, None, quads, False, False, square, None, used)
    if len(empty) > 1:
        raise RepresentationError(f"{len(empty)} empty quadrants for distinct hyperplanes")
    eq = empty[0]
    base = "facing" if eq == (0, 0) else "nested"
    if _explicit(space):
        seps = _separators_explicit(space, a.hyperplane, b.hyperplane)
        sep = seps[0] if seps else None
        strong = sep is not None and not space.common_transversal(a.hyperplane, b.hyperplane)
    else:
        sep, r = _first_separator_lazy(space, a, b, radius)
        used = max(used, r)
        strong = sep is not None and not space.common_transversal(a.hyperplane, b.hyperplane)
    return PairRelation(base, eq, quads, sep is not None, strong, None, sep, used)


def is_separated(space, h1, h2, radius: int | None = None) -> bool:
    a, b = _as_halfspace(space, h1), _as_halfspace(space, h2)
    if a.hyperplane == b.hyperplane or is_transverse(space, a, b, radius):
        return False
    return quadrant_classify(space, a, b, radius).separated


def is_strongly_separated(space, h1, h2, radius: int | None = None) -> bool:
    """Separated by a third hyperplane, with no hyperplane crossing both.

    Explicit complexes are scanned over every hyperplane.  Lazy spaces scan
    the hyperplanes of one geodesic between the carriers for a separator
    and ask the family for a common transversal.
    """
    a, b = _as_halfspace(space, h1), _as_halfspace(space, h2)
    if a.hyperplane == b.hyperplane:
        return False
    if _explicit(space):
        k1, k2 = a.hyperplane, b.hyperplane
        if (k1, k2) in space.transverse_pairs:
            return False
        if space.common_transversal(k1, k2):
            return False
        return bool(_separators_explicit(space, k1, k2))
    if space.common_transversal(a.hyperplane, b.hyperplane):
        return False
    if is_transverse(space, a, b, radius):
        return False
    sep, _ = _first_separator_lazy(space, a, b, radius)
    return sep is not None


def facing_tuple_check(space, halfspaces: Sequence, radius: int | None = None) -> bool:
    """True iff the halfspaces are pairwise vertex-disjoint."""
    hs = [_as_halfspace(space, h) for h in halfspaces]
    if len(hs) < 2:
        raise ValueError("need at least two halfspaces")
    return all(not meets(x, y, radius) for x, y in itertools.combinations(hs, 2))


def hyperplane_distance(space, h1, h2) -> int:
    """Least edge-path distance between the edge sets of two hyperplanes."""
    k1 = h1.hyperplane if isinstance(h1, Halfspace) else h1
    k2 = h2.hyperplane if isinstance(h2, Halfspace) else h2
    return space.hyperplane_distance(k1, k2)


# -- ultrafilters and duality --------------------------------------------------


@dataclass(frozen=True)
class UltrafilterView:
    vertex: object
    halfspaces: tuple[tuple[int, int], ...]
    choice: bool
    consistency: bool


def theta(cx: CubeComplexGraph, v) -> tuple[int, ...]:
    """Side of ``v`` for every hyperplane, in hyperplane order."""
    col = cx.side0[:, cx.index[v]]
    return tuple(int(not s) for s in col)


def vertex_ultrafilter(cx: CubeComplexGraph, v, pocset: "Pocset | None" = None) -> UltrafilterView:
    """The halfspaces containing ``v``, checked for Choice and Consistency."""
    sides = theta(cx, v)
    chosen = tuple((k, s) for k, s in enumerate(sides))
    choice = len(chosen) == cx.n_hyperplanes and len({k for k, _ in chosen}) == len(chosen)
    P = pocset if pocset is not None else pocset_of(cx)
    idx = np.array([2 * k + s for k, s in chosen], dtype=np.int64)
    inside = np.zeros(2 * cx.n_hyperplanes, dtype=bool)
    inside[idx] = True
    # everything above a chosen halfspace must be chosen as well
    above = P.leq[idx].any(axis=0) if idx.size else inside
    consistency = bool(np.all(inside[above]))
    if not (choice and consistency):
        raise RepresentationError(f"vertex {v!r} does not give an ultrafilter")
    return UltrafilterView(v, chosen, choice, consistency)


class Pocset:
    """Finite poset with order-reversing involution ``(i, s) -> (i, 1 - s)``.

    Halfspace ``(i, s)`` is stored at index ``2 * position(i) + s``.
    ``leq[a, b]`` means halfspace ``a`` is contained in halfspace ``b``.
    """

    def __init__(self, pairs: Sequence, containments: Iterable = (), closed: bool = False):
        self.pairs = tuple(pairs)
        if len(set(self.pairs)) != len(self.pairs):
            raise PocsetError("duplicate pair id")
        self.pos = {p: i for i, p in enumerate(self.pairs)}
        m = 2 * len(self.pairs)
        leq = np.eye(m, dtype=bool)
        for (a, sa), (b, sb) in containments:
            try:
                i, j = self.index((a, sa)), self.index((b, sb))
            except KeyError as exc:
                raise PocsetError(f"containment mentions undeclared pair {exc.args[0]!r}") from None
            leq[i, j] = True
            leq[j ^ 1, i ^ 1] = True
        if not closed:
            for k in range(m):
                leq |= np.outer(leq[:, k], leq[k])
        self.leq = leq
        self._validate()

    def index(self, h: tuple) -> int:
        p, s = h
        if s not in (0, 1):
            raise PocsetError(f"side must be 0 or 1, got {s!r}")
        return 2 * self.pos[p] + s

    def _validate(self) -> None:
        leq = self.leq
        m = leq.shape[0]
        if m and not np.array_equal(leq, leq[np.arange(m) ^ 1][:, np.arange(m) ^ 1].T):
            raise PocsetError("involution is not order reversing")
        sym = leq & leq.T
        np.fill_diagonal(sym, False)
        if sym.any():
            a, b = map(int, np.argwhere(sym)[0])
            raise PocsetError(f"halfspaces {self.label(a)} and {self.label(b)} contain each other")
        for i in range(0, m, 2):
            if leq[i, i + 1] or leq[i + 1, i]:
                raise PocsetError(f"halfspace {self.label(i)} is comparable with its complement")

    def label(self, idx: int) -> tuple:
        return (self.pairs[idx >> 1], idx & 1)

    def __len__(self) -> int:
        return len(self.pairs)

    def containments(self) -> list[tuple[tuple, tuple]]:
        """Strict containments, one per dual class (the one with smaller left index)."""
        out = []
        for a, b in zip(*np.nonzero(self.leq)):
            a, b = int(a), int(b)
            if a == b:
                continue
            if (a, b) <= (b ^ 1, a ^ 1):
                out.append((self.label(a), self.label(b)))
        return out

    def ultrafilters(self) -> list[tuple[int, ...]]:
        """All side choices with no chosen ``a`` inside a chosen ``b*``."""
        n = len(self.pairs)
        bad = self.leq[:, np.arange(2 * n) ^ 1]  # bad[a, b]: a inside b*
        out: list[tuple[int, ...]] = []
        chosen: list[int] = []

        def rec(i):
            if i == n:
                out.append(tuple(c & 1 for c in chosen))
                return
            for s in (0, 1):
                a = 2 * i + s
                if chosen and (bad[a, chosen].any() or bad[chosen, a].any()):
                    continue
                if bad[a, a]:
                    continue
                chosen.append(a)
                rec(i + 1)
                chosen.pop()

        rec(0)
        return out


def pocset_of(cx: CubeComplexGraph) -> Pocset:
    """Halfspace pocset of an explicit complex (containment of vertex sets)."""
    m = cx.n_hyperplanes
    masks = np.empty((2 * m, cx.n), dtype=bool)
    masks[0::2] = cx.side0
    masks[1::2] = ~cx.side0
    if m == 0:
        return Pocset([])
    inter = masks.astype(np.int32) @ (~masks).astype(np.int32).T
    return _from_leq(range(m), inter == 0)


def _from_leq(pairs, leq: np.ndarray) -> Pocset:
    p = Pocset.__new__(Pocset)
    p.pairs = tuple(pairs)
    p.pos = {x: i for i, x in enumerate(p.pairs)}
    p.leq = leq
    p._validate()
    return p


def dual_complex(pocset: Pocset) -> CubeComplexGraph:
    """Graph of ultrafilters; edges flip exactly one pair.

    Vertices are side tuples in pair order, matching :func:`theta` for
    pocsets harvested by :func:`pocset_of`.
    """
    ufs = pocset.ultrafilters()
    present = set(ufs)
    edges = []
    for u in ufs:
        for i, s in enumerate(u):
            if s == 0:
                w = u[:i] + (1,) + u[i + 1:]
                if w in present:
                    edges.append((u, w))
    return CubeComplexGraph(edges, vertices=ufs)


# -- descending chains ------------------------------------------------------------


@dataclass(frozen=True)
class DescendingChain:
    """Verified prefix ``h[0] > h[1] > ...`` of a descending chain."""

    halfspaces: tuple
    strongly_separated: bool
    generator: str = ""
    radius: int = 0
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.halfspaces)

    def __getitem__(self, i):
        return self.halfspaces[i]


def make_chain(
    halfspaces: Sequence[Halfspace],
    generator: str = "",
    radius: int | None = None,
    check_strong: bool = True,
) -> DescendingChain:
    """Verify strict descent (and optionally strong separation) of a prefix.

    Raises :class:`ChainError` at the first failing containment.  Running
    out of radius truncates the chain instead of failing it.
    """
    hs = list(halfspaces)
    kept = hs[:1]
    strong = True
    used = 0
    truncated = False
    for i in range(1, len(hs)):
        prev, cur = hs[i - 1], hs[i]
        try:
            ok = is_strict_subset(cur, prev, radius)
            if ok and check_strong and strong:
                strong = is_strongly_separated(cur.space, prev, cur, radius)
        except InconclusiveError as exc:
            used = max(used, exc.radius or 0)
            truncated = True
            break
        if not ok:
            raise ChainError(f"chain stops descending at index {i}", index=i)
        kept.append(cur)
    if hs and not _explicit(hs[0].space):
        ends = [x for h in kept for x in (h.tail, h.head)]
        used = max(used, _consumed(hs[0].space, ends))
    return DescendingChain(tuple(kept), bool(check_strong and strong and len(kept) > 1), generator, used, truncated)


@dataclass(frozen=True)
class ChainDisjointness:
    """``kind`` is ``"disjoint_at"`` (1-based ``index``) or ``"intersecting_through"``."""

    kind: str
    index: int
    radius: int = 0


def chain_disjointness(chain_a, chain_b, m: int | None = None, radius: int | None = None) -> ChainDisjointness:
    """First 1-based index where the chains' halfspaces are disjoint."""
    a = list(chain_a.halfspaces if isinstance(chain_a, DescendingChain) else chain_a)
    b = list(chain_b.halfspaces if isinstance(chain_b, DescendingChain) else chain_b)
    m = min(len(a), len(b)) if m is None else m
    if m > min(len(a), len(b)):
        raise ValueError(f"chains are shorter than m={m}")
    used = 0
    for i in range(m):
        w, r = meet_witness(a[i], b[i], radius)
        used = max(used, r)
        if w is None:
            return ChainDisjointness("disjoint_at", i + 1, used)
    return ChainDisjointness("intersecting_through", m, used)


def relation_matrix(cx: CubeComplexGraph) -> list[list[str]]:
    """Base relation of every pair of hyperplanes (side 0 against side 0)."""
    m = cx.n_hyperplanes
    out = [["self"] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        r = quadrant_classify(cx, i, j)
        label = r.base + ("+strong" if r.strongly_separated else "+sep" if r.separated else "")
        out[i][j] = out[j][i] = label
    return out

