"""Brute-force reference implementations used only by the tests.

None of these share code with the package beyond the graph container.
"""

from __future__ import annotations

import itertools
from collections import deque

import networkx as nx


def nx_graph(cx) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(cx.vertices)
    g.add_edges_from(cx.edges())
    return g


def all_distances(g: nx.Graph) -> dict:
    return dict(nx.all_pairs_shortest_path_length(g))


def medians(g: nx.Graph, d: dict, u, v, w) -> list:
    return [m for m in g if d[u][m] + d[m][v] == d[u][v] and d[v][m] + d[m][w] == d[v][w] and d[u][m] + d[m][w] == d[u][w]]


def is_median_graph(g: nx.Graph) -> bool:
    if not nx.is_connected(g):
        return False
    d = all_distances(g)
    return all(len(medians(g, d, *t)) == 1 for t in itertools.combinations_with_replacement(list(g), 3))


def theta_classes(g: nx.Graph) -> list[set[frozenset]]:
    """Djokovic-Winkler classes: edges ab, xy related when d(a,x)+d(b,y) != d(a,y)+d(b,x)."""
    d = all_distances(g)
    edges = [tuple(e) for e in g.edges()]
    parent = list(range(len(edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(edges)), 2):
        (a, b), (x, y) = edges[i], edges[j]
        if d[a][x] + d[b][y] != d[a][y] + d[b][x]:
            parent[find(i)] = find(j)
    groups: dict[int, set] = {}
    for i, e in enumerate(edges):
        groups.setdefault(find(i), set()).add(frozenset(e))
    return list(groups.values())


def side_of(g: nx.Graph, cls: set[frozenset], v) -> frozenset:
    """Vertices reachable from ``v`` without crossing an edge of ``cls``."""
    h = g.copy()
    h.remove_edges_from(tuple(e) for e in cls)
    return frozenset(nx.node_connected_component(h, v))


def halfspace_sets(g: nx.Graph, tail, head) -> tuple[frozenset, frozenset]:
    """(side containing head, side containing tail) of the class of edge tail-head."""
    cls = next(c for c in theta_classes(g) if frozenset((tail, head)) in c)
    return side_of(g, cls, head), side_of(g, cls, tail)


def wall_list(g: nx.Graph) -> list[tuple[frozenset, frozenset, frozenset]]:
    """(side, other side, carrier vertices) per class."""
    out = []
    for cls in theta_classes(g):
        a, b = tuple(next(iter(cls)))
        carrier = frozenset(v for e in cls for v in e)
        out.append((side_of(g, cls, a), side_of(g, cls, b), carrier))
    return out


def quadrants(A: frozenset, B: frozenset, V: frozenset) -> dict:
    Ac, Bc = V - A, V - B
    return {(0, 0): bool(A & B), (0, 1): bool(A & Bc), (1, 0): bool(Ac & B), (1, 1): bool(Ac & Bc)}


def crosses(walls, V, p: int, q: int) -> bool:
    return p != q and all(quadrants(walls[p][0], walls[q][0], V).values())


def strongly_separated(walls, V: frozenset, i: int, j: int) -> bool:
    """Some wall has the carriers of i and j on opposite sides, and no wall crosses both."""
    if i == j:
        return False
    sep = any(
        (walls[i][2] <= walls[k][0] and walls[j][2] <= walls[k][1]) or (walls[i][2] <= walls[k][1] and walls[j][2] <= walls[k][0])
        for k in range(len(walls)) if k not in (i, j)
    )
    return sep and not any(crosses(walls, V, k, i) and crosses(walls, V, k, j) for k in range(len(walls)))


def cayley_girth(elements, steps, mul) -> int | None:
    """Shortest cycle of the simple Cayley graph, by deleting each edge in turn."""
    g = nx.Graph()
    g.add_nodes_from(elements)
    for x in elements:
        for s in steps:
            y = mul(x, s)
            if y != x:
                g.add_edge(x, y)
    best = None
    for u, v in list(g.edges()):
        g.remove_edge(u, v)
        try:
            L = nx.shortest_path_length(g, u, v) + 1
            best = L if best is None else min(best, L)
        except nx.NetworkXNoPath:
            pass
        g.add_edge(u, v)
    return best


def automorphism_count(g: nx.Graph) -> int:
    return sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(g, g).isomorphisms_iter())


def free_reduce(word: str) -> str:
    out: list[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def ball_words(letters: str, radius: int) -> list[str]:
    """Reduced words of length at most ``radius`` over letters and their inverses."""
    alpha = letters + letters.upper()
    seen, frontier = [""], deque([""])
    while frontier:
        w = frontier.popleft()
        if len(w) == radius:
            continue
        for ch in alpha:
            if w and w[-1] == ch.swapcase():
                continue
            seen.append(w + ch)
            frontier.append(w + ch)
    return seen
