"""Lines of cube complexes and the wreath-type groups acting on them.

Given a finite complex ``X`` with a diametric pair ``(v, v*)`` (joined by a
geodesic that crosses every hyperplane once), ``L[X]`` glues copies
``X_i``, ``i`` in ``Z``, by identifying ``v*`` of copy ``i`` with ``v`` of
copy ``i + 1``.  Points are labelled ``(i, x)`` with ``x != v*``; the glue
point ``v*_i`` is stored as ``(i + 1, v)``.

The group ``Z x| (+)_Z H`` with ``H = Aut_{v,v*}(X)`` acts on ``L[X]``: an
element ``(sigma, tau^n)`` first shifts copies by ``n`` and then applies
the component ``sigma_j`` inside copy ``j``.  Multiplication is

    (s1, t^m)(s2, t^n) = (s1 * shift_m(s2), t^(m+n)),
    component j of the product = s1_j o s2_(j-m).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .actions import Automorphism, GroupAction
from .core import CubeComplexGraph, link_is_flag, product, validate_median
from .girth import PermGroup, _generating_subset, derived_series, inv, mul, perm_order

__all__ = [
    "DiametricPair",
    "find_diametric_pair",
    "product_pair",
    "LineComplex",
    "build_line_complex",
    "all_automorphisms",
    "aut_fixing_pair",
    "hyperplane_permutation",
    "symmetric_action_check",
    "WreathElement",
    "WreathGroup",
    "wreath_multiply",
    "wreath_inverse",
    "wreath_act",
    "verify_wreath_law",
    "nonsolvability_evidence",
    "wreath_demo",
]


@dataclass(frozen=True)
class DiametricPair:
    v: object
    vstar: object
    geodesic: tuple

    @property
    def distance(self) -> int:
        return len(self.geodesic) - 1


def _walk(cx: CubeComplexGraph, u, v) -> tuple:
    path = [u]
    while path[-1] != v:
        x = path[-1]
        d = cx.distance(x, v)
        path.append(next(y for y in cx.neighbors(x) if cx.distance(y, v) == d - 1))
    return tuple(path)


def _crosses_all(cx: CubeComplexGraph, path: Sequence) -> bool:
    crossed = [cx.hyperplane_of(a, b) for a, b in zip(path, path[1:])]
    return sorted(crossed) == list(range(cx.n_hyperplanes))


def find_diametric_pair(X: CubeComplexGraph) -> DiametricPair | None:
    """First pair (in vertex order) at distance equal to the hyperplane count."""
    m = X.n_hyperplanes
    d = X.dist
    for i in range(X.n):
        for j in range(i + 1, X.n):
            if d[i, j] == m:
                u, v = X.vertices[i], X.vertices[j]
                path = _walk(X, u, v)
                assert _crosses_all(X, path)
                return DiametricPair(u, v, path)
    return None


def check_pair(X: CubeComplexGraph, pair: DiametricPair) -> bool:
    path = pair.geodesic
    return (
        path[0] == pair.v and path[-1] == pair.vstar
        and all(b in X.neighbors(a) for a, b in zip(path, path[1:]))
        and X.distance(pair.v, pair.vstar) == X.n_hyperplanes == len(path) - 1
        and _crosses_all(X, path)
    )


def product_pair(X: CubeComplexGraph, px: DiametricPair, Y: CubeComplexGraph, py: DiametricPair):
    """``((x, y), (x*, y*))`` on ``X x Y``, walking ``X`` first then ``Y``."""
    P = product(X, Y)
    path = [(x, py.v) for x in px.geodesic] + [(px.vstar, y) for y in py.geodesic[1:]]
    return P, DiametricPair((px.v, py.v), (px.vstar, py.vstar), tuple(path))


class LineComplex:
    """Lazy ``L[X]``; see the module docstring for labels."""

    is_finite = False

    def __init__(self, X: CubeComplexGraph, pair: DiametricPair):
        if not check_pair(X, pair):
            raise ValueError("not a diametric pair of X")
        self.X = X
        self.pair = pair
        self.v, self.vstar = pair.v, pair.vstar
        self.D = X.distance(self.v, self.vstar)
        self.basepoint = (0, self.v)
        self.dim_bound = X.dim_bound

    def __repr__(self) -> str:
        return f"LineComplex(X={self.X!r})"

    def canon(self, i: int, x) -> tuple:
        return (i + 1, self.v) if x == self.vstar else (i, x)

    def in_copy(self, p: tuple, i: int):
        """Coordinate of ``p`` as a vertex of copy ``i`` (None if outside)."""
        j, x = p
        if j == i:
            return x
        if j == i + 1 and x == self.v:
            return self.vstar
        return None

    def __contains__(self, p) -> bool:
        return isinstance(p, tuple) and len(p) == 2 and p[1] in self.X.index and p[1] != self.vstar

    def neighbors(self, p: tuple) -> tuple:
        i, x = p
        out = [self.canon(i, y) for y in self.X.neighbors(x)]
        if x == self.v:
            out.extend(self.canon(i - 1, y) for y in self.X.neighbors(self.vstar))
        return tuple(sorted(out))

    def distance(self, p: tuple, q: tuple) -> int:
        (i, x), (j, y) = p, q
        if i == j:
            return self.X.distance(x, y)
        if i > j:
            (i, x), (j, y) = (j, y), (i, x)
        X = self.X
        return X.distance(x, self.vstar) + (j - i - 1) * self.D + X.distance(self.v, y)

    def edge_copy(self, p: tuple, q: tuple) -> tuple[int, object, object]:
        for c in (min(p[0], q[0]), max(p[0], q[0]) - 1):
            a, b = self.in_copy(p, c), self.in_copy(q, c)
            if a is not None and b is not None and b in self.X.neighbors(a):
                return c, a, b
        raise ValueError(f"{p!r} and {q!r} are not adjacent")

    def halfspace_key(self, p: tuple, q: tuple):
        c, a, b = self.edge_copy(p, q)
        k, side = self.X.halfspace_key(a, b)
        return (c, k), side

    def key_edge(self, key, side: int):
        c, k = key
        a, b = self.X.key_edge(k, side)
        return self.canon(c, a), self.canon(c, b)

    def common_transversal(self, k1, k2) -> bool:
        return k1[0] == k2[0] and self.X.common_transversal(k1[1], k2[1])

    def hyperplane_distance(self, k1, k2) -> int:
        (i, a), (j, b) = sorted((k1, k2))
        X = self.X
        if i == j:
            return X.hyperplane_distance(a, b)

        def ends(k):
            return {x for e in X.class_edges[k] for x in X.edge_index[e]}

        to_vstar = min(int(X.dist[x, X.index[self.vstar]]) for x in ends(a))
        from_v = min(int(X.dist[X.index[self.v], y]) for y in ends(b))
        return to_vstar + (j - i - 1) * self.D + from_v

    def factor_of(self, key) -> int:
        return 0

    def copies(self, lo: int, hi: int) -> CubeComplexGraph:
        """Explicit subcomplex made of copies ``lo..hi``."""
        edges = []
        for i in range(lo, hi + 1):
            for a, b in self.X.edges():
                edges.append((self.canon(i, a), self.canon(i, b)))
        return CubeComplexGraph(edges, base=(lo, self.v) if lo <= 0 <= hi else None, dim_bound=self.dim_bound)

    def ball_copies(self, r: int) -> CubeComplexGraph:
        return self.copies(-r, r)

    def shift(self, n: int = 1) -> Automorphism:
        return Automorphism(lambda p: (p[0] + n, p[1]), lambda p: (p[0] - n, p[1]), "t" if n == 1 else f"t^{n}")

    def glue_points(self, lo: int, hi: int) -> list[tuple]:
        return [(i, self.v) for i in range(lo, hi + 1)]

    def hyperbolicity_certificate(self, auto) -> dict | None:
        """Positive when ``auto`` moves glue points along the glue spine.

        Every geodesic between glue points runs through all glue points in
        between, so glue points form a combinatorial line; an isometry that
        maps ``v_0`` to ``v_n`` and ``v_n`` to ``v_2n`` (``n != 0``) preserves
        it and translates it by ``n`` copies.
        """
        p0 = self.basepoint
        p1 = auto(p0)
        p2 = auto(p1)
        if p1[1] != self.v or p2[1] != self.v or p1[0] == 0 or p2[0] - p1[0] != p1[0]:
            return None
        return {"kind": "glue-spine", "copies": p1[0], "translation_length": abs(p1[0]) * self.D}


def build_line_complex(X: CubeComplexGraph, pair: DiametricPair | None = None, radius_copies: int = 2) -> LineComplex:
    """``L[X]`` with its explicit window of copies ``-r..r`` checked.

    The window must be median and flag at every glue point; the checked
    window is kept as ``line.window``.
    """
    pair = pair or find_diametric_pair(X)
    if pair is None:
        raise ValueError("X has no diametric pair")
    line = LineComplex(X, pair)
    ball = line.ball_copies(radius_copies)
    if not validate_median(ball).is_median:  # pragma: no cover - would contradict the gluing argument
        raise AssertionError("line window is not median")
    for g in line.glue_points(-radius_copies + 1, radius_copies):
        if not link_is_flag(ball, g):  # pragma: no cover
            raise AssertionError(f"link at {g!r} is not flag")
    line.window = ball
    return line


# -- automorphisms of X --------------------------------------------------------------


def all_automorphisms(X: CubeComplexGraph) -> list[tuple[int, ...]]:
    """Every automorphism of a connected skeleton, as a permutation of indices.

    Automorphisms of a connected graph are exactly its distance-preserving
    bijections, so vertices are assigned in BFS order and each candidate
    must match the distances to everything assigned so far.
    """
    import numpy as np

    n = X.n
    if n == 0:
        return [()]
    if not X.is_connected:
        raise ValueError("automorphism search needs a connected skeleton")
    D = np.asarray(X.dist)
    order = [int(i) for i in np.argsort(D[0], kind="stable")]
    img = [-1] * n
    used = np.zeros(n, dtype=bool)
    out: list[tuple[int, ...]] = []

    def rec(t: int) -> None:
        if t == n:
            out.append(tuple(img))
            return
        x = order[t]
        done = order[:t]
        mask = ~used
        if done:
            mask &= np.all(D[:, [img[u] for u in done]] == D[x, done], axis=1)
        for w in np.flatnonzero(mask):
            img[x] = int(w)
            used[w] = True
            rec(t + 1)
            used[w] = False
        img[x] = -1

    rec(0)
    return sorted(out)


def aut_fixing_pair(X: CubeComplexGraph, pair: DiametricPair | None = None) -> PermGroup:
    """``Aut_{v,v*}(X)`` as a permutation group on the vertex indices of ``X``."""
    pair = pair or find_diametric_pair(X)
    iv, iw = X.index[pair.v], X.index[pair.vstar]
    elems = [p for p in all_automorphisms(X) if p[iv] == iv and p[iw] == iw]
    gens = _generating_subset(elems, X.n)
    grp = PermGroup(X.n, {f"h{i + 1}": g for i, g in enumerate(gens)})
    assert grp.order == len(elems)
    grp.labels = X.vertices
    return grp


def hyperplane_permutation(X: CubeComplexGraph, perm: Sequence[int]) -> tuple[int, ...]:
    """Induced permutation of hyperplane ids."""
    out = []
    for k in range(X.n_hyperplanes):
        i, j = X.edge_index[X.class_edges[k][0]]
        out.append(int(X.edge_class[X.edge_id[(perm[i], perm[j])]]))
    return tuple(out)


def symmetric_action_check(X: CubeComplexGraph, group: PermGroup) -> dict:
    """Is ``group`` acting on hyperplanes faithfully, as the full symmetric group?"""
    images = {hyperplane_permutation(X, g) for g in group.elements}
    m = X.n_hyperplanes
    return {
        "order": group.order,
        "hyperplanes": m,
        "image_order": len(images),
        "faithful": len(images) == group.order,
        "full_symmetric": len(images) == math.factorial(m),
    }


# -- the wreath group -------------------------------------------------------------------


@dataclass(frozen=True)
class WreathElement:
    """Components ``((j, perm), ...)`` (non-identity only, sorted) and a shift."""

    components: tuple = ()
    shift: int = 0

    @property
    def support(self) -> tuple[int, int] | None:
        if not self.components:
            return None
        return self.components[0][0], self.components[-1][0]

    def component(self, j: int, identity: tuple) -> tuple:
        for i, p in self.components:
            if i == j:
                return p
        return identity


def _pack(comp: dict, identity: tuple) -> tuple:
    return tuple(sorted((j, p) for j, p in comp.items() if p != identity))


class WreathGroup:
    """``Z x| (+)_Z H`` acting on a :class:`LineComplex`."""

    is_finite = False

    def __init__(self, line: LineComplex, H: PermGroup | None = None):
        self.line = line
        self.H = H if H is not None else aut_fixing_pair(line.X, line.pair)
        self.e = self.H.identity
        self.identity = WreathElement()

    def element(self, components: dict | None = None, shift: int = 0) -> WreathElement:
        comp = {j: tuple(p) for j, p in (components or {}).items()}
        for p in comp.values():
            if p not in self.H:
                raise ValueError("component is not in the pair stabiliser")
        return WreathElement(_pack(comp, self.e), shift)

    def multiply(self, a: WreathElement, b: WreathElement) -> WreathElement:
        m = a.shift
        comp = dict(a.components)
        for j, p in b.components:
            comp[j + m] = mul(comp.get(j + m, self.e), p)
        return WreathElement(_pack(comp, self.e), a.shift + b.shift)

    def inverse(self, a: WreathElement) -> WreathElement:
        n = a.shift
        return WreathElement(_pack({j - n: inv(p) for j, p in a.components}, self.e), -n)

    def is_identity(self, a: WreathElement) -> bool:
        return a.shift == 0 and not a.components

    def power(self, a: WreathElement, k: int) -> WreathElement:
        if k < 0:
            a, k = self.inverse(a), -k
        out, base = self.identity, a
        while k:
            if k & 1:
                out = self.multiply(out, base)
            base = self.multiply(base, base)
            k >>= 1
        return out

    def commutator(self, a: WreathElement, b: WreathElement) -> WreathElement:
        return self.multiply(self.multiply(a, b), self.multiply(self.inverse(a), self.inverse(b)))

    def act(self, a: WreathElement, p: tuple) -> tuple:
        i, x = p
        j = i + a.shift
        perm = a.component(j, self.e)
        X = self.line.X
        return (j, X.vertices[perm[X.index[x]]])

    def random_element(self, rng: random.Random, window: tuple[int, int] = (-3, 3), max_shift: int = 2) -> WreathElement:
        comp = {j: rng.choice(self.H.elements) for j in range(window[0], window[1] + 1)}
        return WreathElement(_pack(comp, self.e), rng.randint(-max_shift, max_shift))

    def automorphism(self, a: WreathElement, name: str = "") -> Automorphism:
        ai = self.inverse(a)
        return Automorphism(lambda p: self.act(a, p), lambda p: self.act(ai, p), name)

    def action(self) -> GroupAction:
        """Generators ``t`` (shift) and ``a, b, ...`` (H generators in copy 0)."""
        gens = {"t": self.automorphism(WreathElement((), 1), "t")}
        letters = "abcdefghijklmnopqrsuvwxyz"
        for c, g in zip(letters, self.H.gens):
            gens[c] = self.automorphism(WreathElement(((0, g),), 0), c)
        invol = [c for c, g in zip(letters, self.H.gens) if mul(g, g) == self.e]
        return GroupAction(self.line, gens, involutions=invol)


def wreath_multiply(G: WreathGroup, a: WreathElement, b: WreathElement) -> WreathElement:
    return G.multiply(a, b)


def wreath_inverse(G: WreathGroup, a: WreathElement) -> WreathElement:
    return G.inverse(a)


def wreath_act(G: WreathGroup, a: WreathElement, p: tuple) -> tuple:
    return G.act(a, p)


@dataclass
class WreathLawReport:
    aut_order: int
    stabilizer_order: int
    exponent: int
    trials: int
    points_per_trial: int
    copy_preserved: bool
    law_holds: bool
    failures: list = field(default_factory=list)
    observed_orders: tuple = ()
    minimal_exponent: int = 1

    @property
    def ok(self) -> bool:
        return self.copy_preserved and self.law_holds and not self.failures


def verify_wreath_law(
    X: CubeComplexGraph,
    pair: DiametricPair | None = None,
    trials: int = 1000,
    window: tuple[int, int] = (-3, 3),
    seed: int = 0,
    max_shift: int = 2,
    group: WreathGroup | None = None,
    aut_order: int | None = None,
) -> WreathLawReport:
    """Check that ``[x, y]^|Aut(X)|`` is trivial on random pairs.

    For each pair the commutator must keep every queried point in its copy,
    and its ``|Aut(X)|``-th power must fix every queried point.  Queried
    points are all points of the copies that any factor can reach.
    """
    pair = pair or find_diametric_pair(X)
    G = group or WreathGroup(LineComplex(X, pair))
    N = aut_order if aut_order is not None else len(all_automorphisms(X))
    rng = random.Random(seed)
    reach = window[1] - window[0] + 4 * max_shift + 1
    lo, hi = window[0] - reach, window[1] + reach
    pts = [(i, x) for i in range(lo, hi + 1) for x in X.vertices if x != pair.vstar]
    copy_ok = law_ok = True
    failures = []
    orders = set()
    for t in range(trials):
        x = G.random_element(rng, window, max_shift)
        y = G.random_element(rng, window, max_shift)
        c = G.commutator(x, y)
        cN = G.power(c, N)
        for p in pts:
            q = G.act(c, p)
            if q[0] != p[0]:
                copy_ok = False
                failures.append({"trial": t, "point": p, "kind": "copy"})
                break
            if G.act(cN, p) != p:
                law_ok = False
                failures.append({"trial": t, "point": p, "kind": "law"})
                break
        orders.add(math.lcm(1, *(perm_order(p) for _, p in c.components)) if c.components else 1)
    return WreathLawReport(
        aut_order=N,
        stabilizer_order=G.H.order,
        exponent=N,
        trials=trials,
        points_per_trial=len(pts),
        copy_preserved=copy_ok,
        law_holds=law_ok,
        failures=failures,
        observed_orders=tuple(sorted(orders)),
        minimal_exponent=math.lcm(*orders) if orders else 1,
    )


def nonsolvability_evidence(X: CubeComplexGraph, pair: DiametricPair | None = None, H: PermGroup | None = None) -> dict:
    """Derived series of ``Aut_{v,v*}(X)`` and what it implies."""
    H = H or aut_fixing_pair(X, pair)
    ds = derived_series(H)
    out = {
        "stabilizer_order": H.order,
        "derived_orders": list(ds.orders),
        "solvable": ds.solvable,
        "criterion_met": not ds.solvable,
    }
    if not ds.solvable:
        out["consequence"] = (
            "the direct sum over Z of a nonsolvable group is not virtually solvable "
            "(cited, not machine checked), so the wreath group is not virtually solvable"
        )
    else:
        out["consequence"] = "stabilizer is solvable; the nonsolvability criterion does not apply"
    return out


def hypercube_pair(n: int) -> tuple[CubeComplexGraph, DiametricPair]:
    from .core import hypercube

    X = hypercube(n)
    return X, find_diametric_pair(X)


def wreath_demo(n: int, trials: int = 200, seed: int = 0, window: tuple[int, int] = (-3, 3)) -> dict:
    """Everything needed for the ``L[I^n]`` counterexample chain, as a dict."""
    X, pair = hypercube_pair(n)
    auts = all_automorphisms(X)
    H = aut_fixing_pair(X, pair)
    sym = symmetric_action_check(X, H)
    G = WreathGroup(LineComplex(X, pair), H)
    law = verify_wreath_law(X, pair, trials=trials, window=window, seed=seed, group=G, aut_order=len(auts))
    ns = nonsolvability_evidence(X, pair, H)
    return {
        "n": n,
        "vertices": X.n,
        "pair": [list(pair.v), list(pair.vstar)],
        "aut_order": len(auts),
        "stabilizer": sym,
        "law": {
            "exponent": law.exponent,
            "trials": law.trials,
            "window": list(window),
            "copy_preserved": law.copy_preserved,
            "holds": law.law_holds,
            "failures": len(law.failures),
            "minimal_exponent_observed": law.minimal_exponent,
        },
        "nonsolvability": ns,
        "verdict": bool(sym["full_symmetric"] and law.ok and ns["criterion_met"]),
    }
