"""Girth of Cayley graphs, bounded girth suprema, laws and derived series.

Cayley graphs are simple and undirected: ``g -- g*s`` for ``s`` in
``S`` and its inverses, without loops, so an involution contributes one
edge and ``s*s = 1`` is not a 2-cycle.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``; products
compose right to left, ``mul(p, q)[i] == p[q[i]]``.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import GenerationError

log = logging.getLogger(__name__)

Perm = tuple

__all__ = [
    "PermGroup",
    "GirthResult",
    "InfinityWithin",
    "GirthSup",
    "LawResult",
    "DerivedSeries",
    "girth_cayley",
    "brute_force_girth",
    "girth_sup_bounded",
    "parse_word",
    "check_law",
    "derived_series",
    "small_groups",
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "quaternion",
    "elementary_abelian",
]


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        out = math.lcm(out, n)
    return out


def cycle_notation(p: Perm, one_based: bool = True) -> str:
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        parts.append("(" + " ".join(str(x + one_based) for x in cyc) + ")")
    return "".join(parts) or "()"


def closure(gens: Iterable[Perm], degree: int) -> frozenset:
    """Elements of the subgroup generated by ``gens``."""
    ident = tuple(range(degree))
    gens = [g for g in gens if g != ident]
    seen = {ident}
    q = deque([ident])
    while q:
        x = q.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                q.append(y)
    return frozenset(seen)


class PermGroup:
    """Finite permutation group on ``0..degree-1`` with named generators."""

    is_finite = True

    def __init__(self, degree: int, generators: Mapping[str, Sequence[int]] | Sequence[Sequence[int]] = ()):
        if isinstance(generators, Mapping):
            items = list(generators.items())
        else:
            items = [(f"g{i + 1}", g) for i, g in enumerate(generators)]
        self.degree = degree
        self.names = tuple(n for n, _ in items)
        self.gens = tuple(tuple(int(x) for x in g) for _, g in items)
        for n, g in zip(self.names, self.gens):
            if sorted(g) != list(range(degree)):
                raise ValueError(f"generator {n!r} is not a permutation of 0..{degree - 1}")
        self.identity = tuple(range(degree))
        self._elements: tuple | None = None

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"

    @property
    def elements(self) -> tuple:
        if self._elements is None:
            self._elements = tuple(sorted(closure(self.gens, self.degree)))
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.elements)

    def multiply(self, p: Perm, q: Perm) -> Perm:
        return mul(p, q)

    def inverse(self, p: Perm) -> Perm:
        return inv(p)

    def is_identity(self, p: Perm) -> bool:
        return tuple(p) == self.identity

    def random_element(self, rng: random.Random) -> Perm:
        return rng.choice(self.elements)

    def subgroup(self, gens: Iterable[Perm]) -> "PermGroup":
        return PermGroup(self.degree, list(gens))

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(self.gens, 2))


# -- girth ---------------------------------------------------------------------


@dataclass(frozen=True)
class GirthResult:
    """Exact girth; ``girth`` is None for an acyclic (finite) Cayley graph."""

    girth: int | None
    witness: tuple[str, ...] = ()
    vertices: int = 0
    notes: tuple[str, ...] = ()

    @property
    def infinite(self) -> bool:
        return self.girth is None


@dataclass(frozen=True)
class InfinityWithin:
    """No cycle met within ``radius`` of the identity."""

    radius: int
    lower_bound: int
    notes: tuple[str, ...] = ()

    girth = None
    infinite = True


def _labelled_steps(group, gens: Sequence, names: Sequence[str]) -> tuple[list, list[str], list[str]]:
    """Distinct non-identity steps ``s`` and ``s^-1`` with printable labels."""
    steps, labels, notes = [], [], []
    seen = set()
    for g, n in zip(gens, names):
        if group.is_identity(g):
            notes.append(f"generator {n} is the identity (loop dropped)")
            continue
        gi = group.inverse(g)
        for s, lab in ((g, n), (gi, f"{n}^-1")):
            if s in seen:
                if s == gi and s == g:
                    notes.append(f"generator {n} is an involution (single edge, no 2-cycle)")
                continue
            seen.add(s)
            steps.append(s)
            labels.append(lab)
    return steps, labels, notes


def girth_cayley(group, gens: Sequence | None = None, names: Sequence[str] | None = None, radius: int | None = None):
    """Girth of ``Cay(group, gens)`` via BFS from the identity.

    Finite groups: the generated subgroup must be the whole group, else
    :class:`GenerationError`.  Groups with ``is_finite = False`` (free
    products) are explored to ``radius`` and report :class:`InfinityWithin`
    if no cycle shows up.
    """
    if gens is None:
        gens, names = list(group.gens), list(group.names)
    gens = [tuple(g) if isinstance(g, list) else g for g in gens]
    names = list(names) if names is not None else [f"s{i + 1}" for i in range(len(gens))]
    finite = getattr(group, "is_finite", True)
    if finite:
        sub = closure(gens, group.degree)
        if len(sub) != group.order:
            raise GenerationError(
                f"generators span a subgroup of order {len(sub)} < {group.order}", subgroup_order=len(sub)
            )
    elif radius is None:
        raise ValueError("infinite groups need an exploration radius")
    steps, labels, notes = _labelled_steps(group, gens, names)
    for n in notes:
        log.info(n)
    ident = group.identity
    depth = {ident: 0}
    branch = {ident: -1}
    parent: dict = {ident: None}
    order = [ident]
    q = deque([ident])
    best = None
    while q:
        x = q.popleft()
        if best is not None and 2 * depth[x] + 1 >= best[0]:
            break
        frontier = radius is not None and depth[x] >= radius
        for s, lab in zip(steps, labels):
            y = group.multiply(x, s)
            if y not in depth:
                if frontier:
                    continue
                depth[y] = depth[x] + 1
                branch[y] = len(order) if x == ident else branch[x]
                parent[y] = (x, lab)
                order.append(y)
                q.append(y)
                continue
            if parent[y] is not None and parent[y][0] == x or parent[x] is not None and parent[x][0] == y:
                continue
            if branch[y] == branch[x] or x == ident or y == ident:
                continue
            length = depth[x] + depth[y] + 1
            if best is None or length < best[0]:
                best = (length, x, y, lab)
    if best is None:
        if not finite:
            return InfinityWithin(radius, 2 * radius + 1, tuple(notes))
        return GirthResult(None, (), len(depth), tuple(notes))
    length, x, y, lab = best
    return GirthResult(length, _cycle_word(parent, x, y, lab), len(depth), tuple(notes))


def _invert_label(lab: str) -> str:
    return lab[:-3] if lab.endswith("^-1") else lab + "^-1"


def _cycle_word(parent, x, y, lab) -> tuple[str, ...]:
    def path(v):
        out = []
        while parent[v] is not None:
            v, l = parent[v]
            out.append(l)
        return out[::-1]

    down = path(x)
    up = [_invert_label(l) for l in reversed(path(y))]
    return tuple(down + [lab] + up)


def brute_force_girth(group, gens: Sequence) -> int | None:
    """Independent girth: for each edge, shortest detour after deleting it."""
    elems = list(group.elements)
    steps = set()
    for g in gens:
        if not group.is_identity(g):
            steps.add(g)
            steps.add(group.inverse(g))
    adj = {x: {group.multiply(x, s) for s in steps} for x in elems}
    best = None
    for u in elems:
        for w in adj[u]:
            if w < u:
                continue
            dist = {u: 0}
            q = deque([u])
            while q:
                x = q.popleft()
                for y in adj[x]:
                    if (x, y) in ((u, w), (w, u)) or y in dist:
                        continue
                    dist[y] = dist[x] + 1
                    q.append(y)
            if w in dist and (best is None or dist[w] + 1 < best):
                best = dist[w] + 1
    return best


def evaluate_labels(group, gens: Sequence, names: Sequence[str], labels: Sequence[str]):
    """Product of the labelled steps (right multiplication order)."""
    lookup = dict(zip(names, gens))
    x = group.identity
    for lab in labels:
        if lab.endswith("^-1"):
            x = group.multiply(x, group.inverse(lookup[lab[:-3]]))
        else:
            x = group.multiply(x, lookup[lab])
    return x


@dataclass(frozen=True)
class GirthSup:
    value: int | None
    witness: tuple
    examined: int
    generating: int
    exact: bool


def _canonical_subset(group, subset: tuple, conj: Sequence[tuple]) -> tuple:
    best = None
    for c, ci in conj:
        img = tuple(sorted(min(mul(mul(c, s), ci), mul(mul(c, inv(s)), ci)) for s in subset))
        if best is None or img < best:
            best = img
    return best


def girth_sup_bounded(group: PermGroup, max_gens: int) -> GirthSup:
    """Largest girth over generating sets of at most ``max_gens`` elements.

    Sets related by conjugation or by inverting members give isomorphic
    Cayley graphs and are examined once.  An acyclic Cayley graph counts
    as infinite girth and is reported with ``value = None``.
    """
    elems = [e for e in group.elements if e != group.identity]
    conj = [(c, inv(c)) for c in group.elements]
    seen = set()
    best: tuple | None = None
    best_val = -1
    examined = generating = 0
    for k in range(1, min(max_gens, len(elems)) + 1):
        for subset in itertools.combinations(elems, k):
            if any(inv(s) in subset and inv(s) < s for s in subset):
                continue
            key = _canonical_subset(group, subset, conj)
            if key in seen:
                continue
            seen.add(key)
            examined += 1
            if len(closure(subset, group.degree)) != group.order:
                continue
            generating += 1
            res = girth_cayley(group, list(subset))
            val = math.inf if res.girth is None else res.girth
            if val > best_val:
                best_val, best = val, subset
    if best is None and group.order == 1:
        return GirthSup(None, (), examined, generating, True)
    value = None if best_val == math.inf else int(best_val)
    return GirthSup(value, tuple(best or ()), examined, generating, max_gens >= group.order)


# -- laws -----------------------------------------------------------------------------


_TOKEN = re.compile(r"\s*(?:(\[)|(\])|(,)|(\()|(\))|(\^-?\d+)|([A-Za-z]))")


def parse_word(text: str) -> tuple[tuple[int, int], ...]:
    """Parse a word in variables ``a..z`` (uppercase = inverse).

    Supports ``(...)^n``, ``x^n`` and commutators ``[u,v] = u v u^-1 v^-1``.
    Variables are numbered by letter: ``a`` or ``A`` is variable 0.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad character at position {pos + 1} in {text!r}")
        toks.append(m)
        pos = m.end()
    toks = [next((i, g) for i, g in enumerate(t.groups()) if g is not None) for t in toks]
    i = 0

    def power(w, n):
        if n < 0:
            w = [(v, -e) for v, e in reversed(w)]
            n = -n
        return w * n

    def atom():
        nonlocal i
        kind, val = toks[i]
        if kind == 6:
            i += 1
            w = [(ord(val.lower()) - 97, -1 if val.isupper() else 1)]
        elif kind == 3:
            i += 1
            w = seq()
            if i >= len(toks) or toks[i][0] != 4:
                raise ValueError("missing ')'")
            i += 1
        elif kind == 0:
            i += 1
            u = seq()
            if i >= len(toks) or toks[i][0] != 2:
                raise ValueError("missing ',' in commutator")
            i += 1
            v = seq()
            if i >= len(toks) or toks[i][0] != 1:
                raise ValueError("missing ']'")
            i += 1
            w = u + v + power(u, -1) + power(v, -1)
        else:
            raise ValueError(f"unexpected token {val!r}")
        while i < len(toks) and toks[i][0] == 5:
            w = power(w, int(toks[i][1][1:]))
            i += 1
        return w

    def seq():
        nonlocal i
        out = []
        while i < len(toks) and toks[i][0] in (0, 3, 6):
            out.extend(atom())
        return out

    word = seq()
    if i != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    red: list = []
    for v, e in word:
        if red and red[-1] == (v, -e):
            red.pop()
        else:
            red.append((v, e))
    if not red:
        raise ValueError(f"word {text!r} reduces to the identity")
    return tuple(red)


def eval_word(group, word: Sequence[tuple[int, int]], values: Sequence):
    x = group.identity
    invs: dict = {}
    for v, e in word:
        g = values[v]
        if e < 0:
            if v not in invs:
                invs[v] = group.inverse(g)
            g = invs[v]
        x = group.multiply(x, g)
    return x


@dataclass(frozen=True)
class LawResult:
    holds: bool
    counterexample: tuple | None
    tested: int
    policy: str


def check_law(group, word, policy: str | int = "auto", seed: int = 0, exhaustive_limit: int = 10**6) -> LawResult:
    """Test ``w(x1..xr) = 1``.

    ``policy`` is ``"exhaustive"``, ``"auto"`` (exhaustive for finite groups
    of at most 10**4 elements when the tuple count is at most
    ``exhaustive_limit``, else 1000 samples) or an integer sample count.
    """
    w = parse_word(word) if isinstance(word, str) else tuple(word)
    r = max(v for v, _ in w) + 1
    finite = getattr(group, "is_finite", False) and hasattr(group, "elements")
    if policy == "auto":
        if finite and group.order <= 10**4 and group.order**r <= exhaustive_limit:
            policy = "exhaustive"
        else:
            policy = 1000
    if policy == "exhaustive":
        if not finite:
            raise ValueError("exhaustive checking needs a finite group")
        n = 0
        for tup in itertools.product(group.elements, repeat=r):
            n += 1
            if not group.is_identity(eval_word(group, w, tup)):
                return LawResult(False, tup, n, "exhaustive")
        return LawResult(True, None, n, "exhaustive")
    rng = random.Random(seed)
    samples = int(policy)
    for n in range(1, samples + 1):
        tup = tuple(group.random_element(rng) for _ in range(r))
        if not group.is_identity(eval_word(group, w, tup)):
            return LawResult(False, tup, n, f"samples:{samples}")
    return LawResult(True, None, samples, f"samples:{samples}")


# -- derived series --------------------------------------------------------------


@dataclass(frozen=True)
class DerivedSeries:
    orders: tuple[int, ...]
    solvable: bool


def _normal_closure(seeds: Iterable[Perm], conjugators: Sequence[Perm], degree: int) -> frozenset:
    gens = {g for g in seeds}
    elems = closure(gens, degree)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            for c in conjugators:
                h = mul(mul(c, g), inv(c))
                if h not in elems:
                    gens.add(h)
                    elems = closure(gens, degree)
                    changed = True
    return elems


def commutator_subgroup_gens(gens: Sequence[Perm], degree: int) -> list[Perm]:
    comms = {mul(mul(a, b), mul(inv(a), inv(b))) for a in gens for b in gens}
    elems = _normal_closure(comms, list(gens), degree)
    return _generating_subset(elems, degree)


def _generating_subset(elems: Iterable[Perm], degree: int) -> list[Perm]:
    elems = sorted(elems)
    chosen: list[Perm] = []
    span = frozenset({tuple(range(degree))})
    for e in elems:
        if e not in span:
            chosen.append(e)
            span = closure(chosen, degree)
            if len(span) == len(elems):
                break
    return chosen


def derived_series(group: PermGroup) -> DerivedSeries:
    """Orders ``|G| > |G'| > ...`` until the series stabilises."""
    gens = [g for g in group.gens if g != group.identity]
    orders = [group.order]
    while orders[-1] > 1:
        gens = commutator_subgroup_gens(gens, group.degree)
        n = len(closure(gens, group.degree))
        if n == orders[-1]:
            return DerivedSeries(tuple(orders), False)
        orders.append(n)
    return DerivedSeries(tuple(orders), True)


# -- small groups ----------------------------------------------------------------


def cyclic(n: int) -> PermGroup:
    return PermGroup(n, {"1": [(i + 1) % n for i in range(n)]})


def dihedral(n: int) -> PermGroup:
    """Symmetries of the ``n``-gon (order ``2n``)."""
    return PermGroup(n, {"r": [(i + 1) % n for i in range(n)], "s": [(-i) % n for i in range(n)]})


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, {})
    gens = {"t": [1, 0] + list(range(2, n))}
    if n > 2:
        gens["c"] = list(range(1, n)) + [0]
    return PermGroup(n, gens)


def alternating(n: int) -> PermGroup:
    gens = {}
    for k in range(n - 2):
        p = list(range(n))
        p[k], p[k + 1], p[k + 2] = p[k + 1], p[k + 2], p[k]
        gens[f"c{k + 1}"] = p
    return PermGroup(n, gens)


def quaternion() -> PermGroup:
    """``Q8`` in its regular representation on ``{1,i,j,k,-1,-i,-j,-k}``."""
    # element e = (sign, unit) with unit in 1,i,j,k -> index sign*4 + unit
    table = {  # unit products: (a, b) -> (sign, unit)
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def left(a_idx):
        sa, ua = divmod(a_idx, 4)
        out = []
        for b_idx in range(8):
            sb, ub = divmod(b_idx, 4)
            s, u = table[(ua, ub)]
            out.append(((sa + sb + s) % 2) * 4 + u)
        return out

    return PermGroup(8, {"i": left(1), "j": left(2)})


def elementary_abelian(k: int) -> PermGroup:
    """``(Z/2)^k`` acting on ``2k`` points by independent swaps."""
    gens = {}
    for i in range(k):
        p = list(range(2 * k))
        p[2 * i], p[2 * i + 1] = 2 * i + 1, 2 * i
        gens[f"e{i + 1}"] = p
    return PermGroup(2 * k, gens)


def small_groups(max_order: int = 24) -> dict[str, PermGroup]:
    """Built-in table: cyclic, dihedral, S3, S4, A4, Q8 and (Z/2)^k."""
    out: dict[str, PermGroup] = {}
    for n in range(1, max_order + 1):
        out[f"Z{n}"] = cyclic(n)
    for n in range(3, max_order // 2 + 1):
        out[f"D{n}"] = dihedral(n)
    for name, g in (("S3", symmetric(3)), ("S4", symmetric(4)), ("A4", alternating(4)), ("Q8", quaternion())):
        if g.order <= max_order:
            out[name] = g
    k = 1
    while 2**k <= max_order:
        out[f"Z2^{k}"] = elementary_abelian(k)
        k += 1
    return out
