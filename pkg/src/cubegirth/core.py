"""Finite cube complexes represented by their median 1-skeletons.

A CAT(0) cube complex is determined by its 1-skeleton, which is a median
graph; cubes are the induced hypercube subgraphs and are recomputed on
demand.  :class:`CubeComplexGraph` is the finite (or finite-ball) carrier
used everywhere else in the package.  Lazily generated infinite families
live in :mod:`cubegirth.lazy` and :mod:`cubegirth.constructions` and expose
the same small vertex-level protocol::

    basepoint, neighbors(v), distance(u, v),
    halfspace_key(u, v), common_transversal(k1, k2), factor_of(key)

Example
-------
>>> from cubegirth import core
>>> cube = core.hypercube(3)
>>> core.validate_median(cube).is_median
True
>>> len(core.detect_cubes(cube, 2))
6
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import RepresentationError, ValidationError

Vertex = Hashable

__all__ = [
    "CubeComplexGraph",
    "Cube",
    "MedianReport",
    "validate_median",
    "link_is_flag",
    "median",
    "detect_cubes",
    "product",
    "irreducible_factorization",
    "is_isomorphic",
    "find_isomorphism",
    "hypercube",
    "path_graph",
    "cycle_graph",
    "star",
    "grid",
    "random_tree",
    "staircase",
]


def ordered(labels: Iterable[Vertex]) -> list:
    """Sort vertex labels deterministically (falls back to ``repr`` order)."""
    labels = list(labels)
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=repr)


class CubeComplexGraph:
    """Immutable finite graph standing for the 1-skeleton of a cube complex.

    Vertices are arbitrary hashable labels; they are stored in sorted order
    and addressed internally by their index in :attr:`vertices`.  Duplicate
    edges are collapsed; loops are rejected.

    Parameters
    ----------
    edges:
        Iterable of vertex-label pairs.
    vertices:
        Extra (possibly isolated) vertices.
    base:
        Basepoint; defaults to the least vertex.
    dim_bound:
        Largest cube dimension that is searched for.
    strategy:
        ``"finite"`` for an explicit complex, ``"ball"`` for a finite ball cut
        out of a lazily generated family.
    radius:
        Ball radius when ``strategy == "ball"``.
    """

    is_finite = True

    def __init__(
        self,
        edges: Iterable[tuple[Vertex, Vertex]] = (),
        vertices: Iterable[Vertex] = (),
        base: Vertex | None = None,
        dim_bound: int = 8,
        strategy: str = "finite",
        radius: int | None = None,
    ):
        if dim_bound < 1:
            raise ValueError("dim_bound must be a positive integer")
        if strategy not in ("finite", "ball"):
            raise ValueError(f"unknown generation strategy {strategy!r}")
        edges = [tuple(e) for e in edges]
        labels = set(vertices)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")
            labels.add(u)
            labels.add(v)
        self.vertices: tuple = tuple(ordered(labels))
        self.index: dict = {v: i for i, v in enumerate(self.vertices)}
        nbrs: list[set[int]] = [set() for _ in self.vertices]
        for u, v in edges:
            i, j = self.index[u], self.index[v]
            nbrs[i].add(j)
            nbrs[j].add(i)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        if base is None and self.vertices:
            base = self.vertices[0]
        if base is not None and base not in self.index:
            raise ValueError(f"basepoint {base!r} is not a vertex")
        self.base = base
        self.dim_bound = dim_bound
        self.strategy = strategy
        self.radius = radius

    # -- basic protocol ---------------------------------------------------
    @property
    def basepoint(self):
        return self.base

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def __repr__(self) -> str:
        return f"CubeComplexGraph(n={self.n}, edges={len(self.edge_index)}, strategy={self.strategy!r})"

    def neighbors(self, v) -> tuple:
        return tuple(self.vertices[j] for j in self.adj[self.index[v]])

    def degree(self, v) -> int:
        return len(self.adj[self.index[v]])

    def edges(self) -> list[tuple]:
        """Edges as sorted label pairs, in index order."""
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edge_index]

    @cached_property
    def edge_index(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, nb in enumerate(self.adj) for j in nb if i < j)

    @cached_property
    def edge_id(self) -> dict[tuple[int, int], int]:
        out = {}
        for k, (i, j) in enumerate(self.edge_index):
            out[(i, j)] = k
            out[(j, i)] = k
        return out

    @cached_property
    def dist(self) -> np.ndarray:
        """All-pairs edge-path distances (``-1`` between components)."""
        n = self.n
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        rows = [i for i, nb in enumerate(self.adj) for _ in nb]
        cols = [j for nb in self.adj for j in nb]
        mat = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        d = shortest_path(mat, method="D", unweighted=True, directed=False)
        return np.where(np.isinf(d), -1, d).astype(np.int64)

    def distance(self, u, v) -> int:
        d = int(self.dist[self.index[u], self.index[v]])
        if d < 0:
            raise ValidationError(f"{u!r} and {v!r} lie in different components")
        return d

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- squares and hyperplane classes ------------------------------------
    @cached_property
    def squares(self) -> tuple[tuple[int, int, int, int], ...]:
        """Induced 4-cycles ``(v, a, c, b)`` listed once each."""
        adj_sets = [set(nb) for nb in self.adj]
        found = set()
        out = []
        for v, nb in enumerate(self.adj):
            for a, b in itertools.combinations(nb, 2):
                if b in adj_sets[a]:
                    continue
                for c in adj_sets[a] & adj_sets[b]:
                    if c == v or c in adj_sets[v]:
                        continue
                    key = frozenset((v, a, b, c))
                    if key in found:
                        continue
                    found.add(key)
                    out.append((v, a, c, b))
        return tuple(out)

    @cached_property
    def edge_class(self) -> np.ndarray:
        """Hyperplane id of every edge (square-relation closure).

        Classes are numbered by their least edge in index order.
        """
        m = len(self.edge_index)
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        eid = self.edge_id
        for v, a, c, b in self.squares:
            union(eid[(v, a)], eid[(b, c)])
            union(eid[(v, b)], eid[(a, c)])
        roots = [find(k) for k in range(m)]
        relabel: dict[int, int] = {}
        out = np.empty(m, dtype=np.int64)
        for k, r in enumerate(roots):
            if r not in relabel:
                relabel[r] = len(relabel)
            out[k] = relabel[r]
        return out

    @property
    def n_hyperplanes(self) -> int:
        return int(self.edge_class.max()) + 1 if len(self.edge_class) else 0

    @cached_property
    def class_edges(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_hyperplanes)]
        for k, c in enumerate(self.edge_class):
            out[c].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def side0(self) -> np.ndarray:
        """Boolean matrix ``(hyperplanes, vertices)``: side 0 membership.

        Side 0 of every hyperplane is the side containing vertex index 0
        (the lexicographically least vertex).
        """
        d = self.dist
        out = np.zeros((self.n_hyperplanes, self.n), dtype=bool)
        for c, ks in enumerate(self.class_edges):
            i, j = self.edge_index[ks[0]]
            closer_i = d[:, i] < d[:, j]
            out[c] = closer_i if closer_i[0] else ~closer_i
        return out

    @cached_property
    def transverse_pairs(self) -> frozenset[tuple[int, int]]:
        """Pairs ``(k1, k2)`` (both orders) of hyperplanes crossing in a square."""
        eid, cls = self.edge_id, self.edge_class
        out = set()
        for v, a, c, b in self.squares:
            k1, k2 = int(cls[eid[(v, a)]]), int(cls[eid[(v, b)]])
            if k1 != k2:
                out.add((k1, k2))
                out.add((k2, k1))
        return frozenset(out)

    @cached_property
    def transverse_sets(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n_hyperplanes)]
        for k1, k2 in self.transverse_pairs:
            out[k1].add(k2)
        return tuple(frozenset(s) for s in out)

    def hyperplane_of(self, u, v) -> int:
        return int(self.edge_class[self.edge_id[(self.index[u], self.index[v])]])

    def halfspace_key(self, u, v) -> tuple[int, int]:
        """``(hyperplane id, side)`` of the side of edge ``uv`` containing ``v``."""
        k = self.hyperplane_of(u, v)
        return k, 0 if self.side0[k, self.index[v]] else 1

    def key_edge(self, k: int, side: int) -> tuple:
        """An edge ``(tail, head)`` of hyperplane ``k`` with ``head`` on ``side``."""
        i, j = self.edge_index[self.class_edges[k][0]]
        u, v = self.vertices[i], self.vertices[j]
        head_side = 0 if self.side0[k, j] else 1
        return (u, v) if head_side == side else (v, u)

    def common_transversal(self, k1: int, k2: int) -> bool:
        return bool(self.transverse_sets[k1] & self.transverse_sets[k2])

    def hyperplane_distance(self, k1: int, k2: int) -> int:
        """Least distance between endpoints of the two edge classes."""
        ends = []
        for k in (k1, k2):
            ends.append(sorted({x for e in self.class_edges[k] for x in self.edge_index[e]}))
        return int(self.dist[np.ix_(ends[0], ends[1])].min())

    def factor_of(self, key) -> int:
        return 0

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edge_index)
        return g

    def relabel(self, mapping) -> "CubeComplexGraph":
        """Copy with vertex labels passed through ``mapping`` (dict or callable)."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return CubeComplexGraph(
            [(f(u), f(v)) for u, v in self.edges()],
            vertices=[f(v) for v in self.vertices],
            base=f(self.base) if self.base is not None else None,
            dim_bound=self.dim_bound,
            strategy=self.strategy,
            radius=self.radius,
        )


@dataclass(frozen=True)
class Cube:
    """An induced hypercube of the skeleton.

    ``directions`` are the hyperplane ids of the edges at the least corner.
    """

    dim: int
    vertices: tuple
    directions: tuple[int, ...]


@dataclass(frozen=True)
class MedianReport:
    is_median: bool
    counterexample: tuple | None = None
    median_count: int | None = None


# -- interval bitsets --------------------------------------------------------


def _interval_bits(cx: CubeComplexGraph) -> np.ndarray:
    """Packed interval masks: ``bits[u, v]`` encodes ``I(u, v)``."""
    d = cx.dist
    n = cx.n
    out = np.empty((n, n, (n + 7) // 8), dtype=np.uint8)
    for u in range(n):
        mask = (d[u][None, :] + d) == d[u][:, None]
        out[u] = np.packbits(mask, axis=1)
    return out


def validate_median(cx: CubeComplexGraph) -> MedianReport:
    """Decide whether every vertex triple has exactly one median.

    Raises :class:`ValidationError` on a disconnected graph, naming one
    vertex from each of the first two components.
    """
    if cx.n == 0:
        return MedianReport(True)
    comps = cx.components()
    if len(comps) > 1:
        a, b = cx.vertices[comps[0][0]], cx.vertices[comps[1][0]]
        raise ValidationError(
            f"graph is disconnected: {a!r} and {b!r} lie in different components",
            components=(a, b),
        )
    n = cx.n
    bits = _interval_bits(cx)
    for u in range(n):
        bu = bits[u]
        for v in range(u, n):
            rows = bu[v][None, :] & bu[v:] & bits[v][v:]
            counts = np.bitwise_count(rows).sum(axis=1)
            bad = np.flatnonzero(counts != 1)
            if bad.size:
                w = v + int(bad[0])
                triple = (cx.vertices[u], cx.vertices[v], cx.vertices[w])
                return MedianReport(False, triple, int(counts[bad[0]]))
    return MedianReport(True)


def median(cx: CubeComplexGraph, u, v, w):
    """The unique median of ``u, v, w``.

    Raises :class:`RepresentationError` if the triple has no or several
    medians (the graph is not median).
    """
    d = cx.dist
    i, j, k = cx.index[u], cx.index[v], cx.index[w]
    mask = (
        (d[i] + d[j] == d[i, j])
        & (d[j] + d[k] == d[j, k])
        & (d[i] + d[k] == d[i, k])
    )
    found = np.flatnonzero(mask)
    if found.size != 1:
        raise RepresentationError(f"triple {(u, v, w)!r} has {found.size} medians")
    return cx.vertices[int(found[0])]


# -- cubes -------------------------------------------------------------------


def _complete_cube(adj_sets: Sequence[set[int]], v: int, corner: Sequence[int]) -> tuple[int, ...] | None:
    """Grow the cube spanned at ``v`` by neighbours ``corner``; None if absent."""
    k = len(corner)
    pos: dict[int, int] = {0: v}
    for s, a in enumerate(corner):
        pos[1 << s] = a
    used = set(pos.values())
    if len(used) != k + 1:
        return None
    for mask in sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m)):
        if mask in pos:
            continue
        subs = [mask & ~(1 << s) for s in range(k) if mask >> s & 1]
        cand = set.intersection(*(adj_sets[pos[m]] for m in subs)) - used
        if not cand:
            return None
        x = min(cand)
        pos[mask] = x
        used.add(x)
    verts = [pos[m] for m in range(1 << k)]
    vs = set(verts)
    n_edges = sum(len(adj_sets[x] & vs) for x in verts) // 2
    expected = k * (1 << (k - 1)) if k else 0
    if n_edges != expected:
        return None
    return tuple(verts)


def _link_graph(cx: CubeComplexGraph, vi: int) -> dict[int, set[int]]:
    adj_sets = [set(nb) for nb in cx.adj]
    link: dict[int, set[int]] = {a: set() for a in cx.adj[vi]}
    for a, b in itertools.combinations(cx.adj[vi], 2):
        if b in adj_sets[a]:
            continue
        if any(c != vi and c not in adj_sets[vi] for c in adj_sets[a] & adj_sets[b]):
            link[a].add(b)
            link[b].add(a)
    return link


def _maximal_cliques(graph: dict[int, set[int]]) -> list[list[int]]:
    out: list[list[int]] = []

    def expand(r, p, x):
        if not p and not x:
            out.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: len(graph[u] & p))
        for u in sorted(p - graph[pivot]):
            expand(r | {u}, p & graph[u], x & graph[u])
            p = p - {u}
            x = x | {u}

    expand(set(), set(graph), set())
    return out


def link_is_flag(cx: CubeComplexGraph, vertex) -> bool:
    """Gromov's link condition at ``vertex``.

    Every set of edges at the vertex that pairwise span squares must span
    a cube.
    """
    vi = cx.index[vertex]
    link = _link_graph(cx, vi)
    adj_sets = [set(nb) for nb in cx.adj]
    for clique in _maximal_cliques(link):
        if len(clique) >= 3 and _complete_cube(adj_sets, vi, clique) is None:
            return False
    return True


def detect_cubes(cx: CubeComplexGraph, k: int) -> list[Cube]:
    """All induced ``k``-dimensional hypercubes, each listed once."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > cx.dim_bound:
        warnings.warn(f"k={k} exceeds dimension bound {cx.dim_bound}; no cubes searched")
        return []
    adj_sets = [set(nb) for nb in cx.adj]
    seen: set[frozenset] = set()
    cubes: list[Cube] = []
    cls = cx.edge_class
    eid = cx.edge_id
    for v in range(cx.n):
        for corner in itertools.combinations(cx.adj[v], k):
            verts = _complete_cube(adj_sets, v, corner)
            if verts is None:
                continue
            key = frozenset(verts)
            if key in seen:
                continue
            seen.add(key)
            least = min(verts)
            dirs = sorted(int(cls[eid[(least, y)]]) for y in adj_sets[least] & key)
            cubes.append(Cube(k, tuple(cx.vertices[x] for x in sorted(verts)), tuple(dirs)))
    return cubes


# -- products and factorisation ----------------------------------------------


def product(a: CubeComplexGraph, b: CubeComplexGraph) -> CubeComplexGraph:
    """Cartesian product of skeletons (change one coordinate at a time)."""
    edges = []
    for u, v in a.edges():
        for y in b.vertices:
            edges.append(((u, y), (v, y)))
    for u, v in b.edges():
        for x in a.vertices:
            edges.append(((x, u), (x, v)))
    verts = [(x, y) for x in a.vertices for y in b.vertices]
    base = (a.base, b.base) if a.base is not None and b.base is not None else None
    return CubeComplexGraph(edges, vertices=verts, base=base, dim_bound=a.dim_bound + b.dim_bound)


def product_of(factors: Sequence[CubeComplexGraph]) -> CubeComplexGraph:
    """Iterated product with flat tuple labels ``(x1, ..., xp)``."""
    if not factors:
        return CubeComplexGraph(vertices=[()])
    out = factors[0].relabel(lambda x: (x,))
    for f in factors[1:]:
        out = product(out, f).relabel(lambda p: p[0] + (p[1],))
    return out


def irreducible_factorization(cx: CubeComplexGraph) -> list[CubeComplexGraph]:
    """Split ``cx`` into irreducible factors.

    Hyperplanes are grouped into the finest classes such that hyperplanes in
    different classes are pairwise transverse (connected components of the
    non-transversality graph).  Each factor is rebuilt as the image of the
    side-choice map restricted to its class; its vertices are bit tuples over
    the class's hyperplanes.
    """
    m = cx.n_hyperplanes
    if m == 0:
        return [cx]
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    trans = cx.transverse_pairs
    for k1 in range(m):
        for k2 in range(k1 + 1, m):
            if (k1, k2) not in trans:
                r1, r2 = find(k1), find(k2)
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
    groups: dict[int, list[int]] = {}
    for k in range(m):
        groups.setdefault(find(k), []).append(k)
    side = cx.side0
    factors = []
    for root in sorted(groups):
        ks = groups[root]
        proj = [tuple(int(not side[k, x]) for k in ks) for x in range(cx.n)]
        kset = set(ks)
        edges = {
            (proj[i], proj[j])
            for e, (i, j) in enumerate(cx.edge_index)
            if int(cx.edge_class[e]) in kset
        }
        base = proj[cx.index[cx.base]] if cx.base is not None else None
        factors.append(CubeComplexGraph(edges, vertices=set(proj), base=base, dim_bound=cx.dim_bound))
    return factors


def find_isomorphism(a: CubeComplexGraph, b: CubeComplexGraph) -> dict | None:
    """A vertex bijection ``a -> b`` preserving adjacency, or None."""
    from networkx.algorithms.isomorphism import GraphMatcher

    if a.n != b.n or len(a.edge_index) != len(b.edge_index):
        return None
    if sorted(len(x) for x in a.adj) != sorted(len(x) for x in b.adj):
        return None
    gm = GraphMatcher(a.to_networkx(), b.to_networkx())
    for iso in gm.isomorphisms_iter():
        return {a.vertices[i]: b.vertices[j] for i, j in iso.items()}
    return None


def is_isomorphic(a: CubeComplexGraph, b: CubeComplexGraph) -> bool:
    return find_isomorphism(a, b) is not None


def is_graph_isomorphism(a: CubeComplexGraph, b: CubeComplexGraph, mapping) -> bool:
    """Check that ``mapping`` is an adjacency-preserving bijection ``a -> b``."""
    f = mapping if callable(mapping) else mapping.get
    images = [f(v) for v in a.vertices]
    if any(x not in b.index for x in images) or len(set(images)) != b.n or a.n != b.n:
        return False
    mapped = {frozenset((f(u), f(v))) for u, v in a.edges()}
    return mapped == {frozenset(e) for e in b.edges()}


# -- standard complexes -------------------------------------------------------


def hypercube(n: int) -> CubeComplexGraph:
    """Skeleton of ``I^n``; vertices are 0/1 tuples, base the zero tuple."""
    verts = list(itertools.product((0, 1), repeat=n))
    edges = []
    for x in verts:
        for i in range(n):
            if x[i] == 0:
                y = x[:i] + (1,) + x[i + 1:]
                edges.append((x, y))
    return CubeComplexGraph(edges, vertices=verts, base=(0,) * n, dim_bound=max(n, 1))


def path_graph(n: int) -> CubeComplexGraph:
    """Path ``P_n`` on ``n`` vertices ``0..n-1``."""
    return CubeComplexGraph([(i, i + 1) for i in range(n - 1)], vertices=range(n))


def cycle_graph(n: int) -> CubeComplexGraph:
    return CubeComplexGraph([(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> CubeComplexGraph:
    """Star with centre ``0`` and leaves ``1..k``."""
    return CubeComplexGraph([(0, i) for i in range(1, k + 1)], vertices=[0])


def grid(m: int, n: int) -> CubeComplexGraph:
    """``P_m x P_n`` with vertices ``(i, j)``."""
    return product(path_graph(m), path_graph(n))


def random_tree(n: int, seed: int | None = None) -> CubeComplexGraph:
    """Random recursive tree on ``n`` vertices (vertex ``i`` attaches below ``i``)."""
    rng = random.Random(seed)
    return CubeComplexGraph([(rng.randrange(i), i) for i in range(1, n)], vertices=[0])


def staircase(n: int) -> CubeComplexGraph:
    """Grid points ``(i, j)`` with ``i + j <= n`` (a staircase of squares)."""
    pts = [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]
    s = set(pts)
    edges = []
    for i, j in pts:
        if (i + 1, j) in s:
            edges.append(((i, j), (i + 1, j)))
        if (i, j + 1) in s:
            edges.append(((i, j), (i, j + 1)))
    return CubeComplexGraph(edges, vertices=pts)
