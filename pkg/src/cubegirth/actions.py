"""Automorphisms, group actions given by generators, and dynamics tests.

Group elements are words over single-letter generator names.  Lowercase
letters are generators; the uppercase letter is the inverse unless the
generator was declared an involution.  A word acts right to left, so
``element("ab")(x) == a(b(x))``.  Word searches run breadth first by
length and then lexicographically in alphabet order (each generator
followed by its inverse), which makes every returned witness the first one
in that order.

Skewering follows the contraction convention: ``g`` double skewers
``h1 <= h2`` when ``g.h2`` is strictly inside ``h1``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from .core import CubeComplexGraph, detect_cubes
from .errors import InconclusiveError
from .halfspaces import (
    DescendingChain,
    Halfspace,
    _as_halfspace,
    _consumed,
    _first_separator_lazy,
    _separators_explicit,
    hyperplane_distance,
    is_strict_subset,
    is_strongly_separated,
    is_subset,
    make_chain,
    meets,
)
from .lazy import ball_graph

__all__ = [
    "Automorphism",
    "GroupAction",
    "AutomorphismCheck",
    "FixedBehavior",
    "SkewerCert",
    "ContractingCert",
    "tree_action",
    "permutation_action",
    "diagonal_action",
    "check_automorphism",
    "classify_fixed_behavior",
    "flips",
    "find_flipper",
    "double_skewers",
    "contracting_certificate",
    "poles_prefix",
    "essentiality_witness",
    "find_simultaneous_skewerer",
]


class Automorphism:
    """A vertex bijection given by forward and backward maps.

    ``factors`` optionally describes the map on a product space as
    ``(perm, maps)``: coordinate ``i`` is sent by ``maps[i]`` to
    coordinate ``perm[i]``.
    """

    __slots__ = ("forward", "backward", "name", "factors", "permutation")

    def __init__(self, forward: Callable, backward: Callable, name: str = "", factors=None, permutation=None):
        self.forward = forward
        self.backward = backward
        self.name = name
        self.factors = factors
        self.permutation = permutation

    def __call__(self, v):
        return self.forward(v)

    def __repr__(self) -> str:
        return f"Automorphism({self.name!r})"

    @classmethod
    def identity(cls, name: str = "") -> "Automorphism":
        f = lambda v: v  # noqa: E731
        return cls(f, f, name)

    @classmethod
    def from_permutation(cls, mapping: Mapping, name: str = "") -> "Automorphism":
        """Finite automorphism from a vertex dictionary (must be bijective)."""
        fwd = dict(mapping)
        back = {v: k for k, v in fwd.items()}
        if len(back) != len(fwd) or set(back) != set(fwd):
            raise ValueError(f"map {name!r} is not a bijection of its domain")
        return cls(fwd.__getitem__, back.__getitem__, name, permutation=fwd)

    def inverse(self) -> "Automorphism":
        fac = None
        if self.factors is not None:
            perm, maps = self.factors
            inv_perm = [0] * len(perm)
            inv_maps = [None] * len(perm)
            for i, j in enumerate(perm):
                inv_perm[j] = i
                inv_maps[j] = maps[i].inverse()
            fac = (tuple(inv_perm), tuple(inv_maps))
        perm = None
        if self.permutation is not None:
            perm = {v: k for k, v in self.permutation.items()}
        return Automorphism(self.backward, self.forward, _inv_name(self.name), fac, perm)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        f1, f2 = self.forward, other.forward
        b1, b2 = self.backward, other.backward
        fac = None
        if self.factors is not None and other.factors is not None:
            ps, ms = self.factors
            po, mo = other.factors
            fac = (
                tuple(ps[po[i]] for i in range(len(po))),
                tuple(ms[po[i]].compose(mo[i]) for i in range(len(po))),
            )
        perm = None
        if self.permutation is not None and other.permutation is not None:
            perm = {v: self.permutation[other.permutation[v]] for v in other.permutation}
        return Automorphism(lambda v: f1(f2(v)), lambda v: b2(b1(v)), self.name + other.name, fac, perm)

    def on_factor_point(self, point: tuple) -> tuple:
        """Image of ``(factor, vertex)`` in the disjoint union of the factors."""
        if self.factors is None:
            i, v = point
            if i != 0:
                raise ValueError("map has no factor decomposition")
            return 0, self.forward(v)
        perm, maps = self.factors
        i, v = point
        return perm[i], maps[i](v)


def _inv_name(name: str) -> str:
    return "".join(c.swapcase() for c in reversed(name))


def _factor_map(auto: Automorphism, i: int):
    """(target factor, map on that factor's vertices) for factor ``i``."""
    if auto.factors is None:
        return i, auto
    perm, maps = auto.factors
    return perm[i], maps[i]


class GroupAction:
    """A group acting on ``space`` through named generators.

    ``generators`` maps single lowercase letters to :class:`Automorphism`
    objects; letters listed in ``involutions`` have no separate inverse.
    ``locate``, when known, maps a vertex ``v`` to a word ``u`` with
    ``u . basepoint == v`` (for a Cayley graph it is the vertex label).
    """

    def __init__(self, space, generators: Mapping[str, Automorphism], involutions: Sequence[str] = (), locate=None):
        for c in generators:
            if len(c) != 1 or not c.islower():
                raise ValueError(f"generator names must be single lowercase letters, got {c!r}")
        self.space = space
        self.generators = dict(generators)
        self.involutions = frozenset(involutions)
        alphabet = []
        self._letter: dict[str, Automorphism] = {}
        for c, g in self.generators.items():
            alphabet.append(c)
            self._letter[c] = g
            if c in self.involutions:
                continue
            alphabet.append(c.upper())
            self._letter[c.upper()] = g.inverse()
        self.alphabet = tuple(alphabet)
        self._cache: dict[str, Automorphism] = {}
        self.locate = locate

    def __repr__(self) -> str:
        return f"GroupAction({self.space!r}, gens={''.join(self.generators)})"

    def inverse_letter(self, ch: str) -> str:
        return ch if ch in self.involutions else ch.swapcase()

    def reduce(self, word: str) -> str:
        out: list[str] = []
        for ch in word:
            if ch not in self._letter:
                raise ValueError(f"unknown generator letter {ch!r}")
            if out and out[-1] == self.inverse_letter(ch):
                out.pop()
            else:
                out.append(ch)
        return "".join(out)

    def inverse_word(self, word: str) -> str:
        return "".join(self.inverse_letter(c) for c in reversed(word))

    def power(self, word: str, k: int) -> str:
        base = word if k >= 0 else self.inverse_word(word)
        return self.reduce(base * abs(k))

    def words(self, max_len: int, min_len: int = 1) -> Iterator[str]:
        """Freely reduced words in shortlex order."""
        layer = [""]
        if min_len <= 0:
            yield ""
        for length in range(1, max_len + 1):
            nxt = []
            for w in layer:
                for ch in self.alphabet:
                    if w and w[-1] == self.inverse_letter(ch):
                        continue
                    nxt.append(w + ch)
            layer = nxt
            if length >= min_len:
                yield from layer

    def element(self, word: str) -> Automorphism:
        word = self.reduce(word)
        got = self._cache.get(word)
        if got is not None:
            return got
        if word == "":
            auto = Automorphism.identity("")
            if self.space is not None and getattr(self.space, "factors", None) is not None:
                n = len(self.space.factors)
                auto.factors = (tuple(range(n)), tuple(Automorphism.identity() for _ in range(n)))
        elif len(word) == 1:
            auto = self._letter[word]
        else:
            auto = self.element(word[:1]).compose(self.element(word[1:]))
            auto.name = word
        if len(self._cache) < 1 << 14:
            self._cache[word] = auto
        return auto

    def apply(self, word: str, v):
        return self.element(word)(v)

    def translate(self, word: str, h: Halfspace) -> Halfspace:
        return h.translate(self.element(word))


def _as_auto(action: GroupAction, g) -> tuple[str, Automorphism]:
    if isinstance(g, Automorphism):
        return g.name, g
    return g, action.element(g)


# -- builders ------------------------------------------------------------------


def tree_action(tree, relabel: Mapping[str, str] | None = None) -> GroupAction:
    """Left multiplication of a free product on its own Cayley tree.

    ``relabel`` lets generator ``c`` act as left multiplication by the
    letter ``relabel[c]`` (an uppercase letter meaning its inverse), which
    gives twisted copies for diagonal actions on products.
    """
    relabel = dict(relabel or {})
    gens = {}
    for c, order in zip(tree.letters, tree.orders):
        s = relabel.get(c, c)
        if tree.reduce(s) != s or len(s) != 1:
            raise ValueError(f"cannot relabel {c!r} as {s!r}")
        inv = tree.inverse(s)
        if tree.reduce(s + s) == "" and order != 2:
            raise ValueError(f"{c!r} has infinite order but {s!r} is an involution")
        gens[c] = Automorphism(
            lambda w, s=s: tree.reduce(s + w), lambda w, inv=inv: tree.reduce(inv + w), c
        )
    inv_letters = [c for c, o in zip(tree.letters, tree.orders) if o == 2]
    plain = all(relabel.get(c, c) == c for c in tree.letters)
    return GroupAction(tree, gens, involutions=inv_letters, locate=(lambda w: w) if plain else None)


def permutation_action(cx: CubeComplexGraph, perms: Mapping[str, Mapping], involutions: Sequence[str] = ()) -> GroupAction:
    """Action of a finite complex by explicit vertex permutations."""
    gens = {c: Automorphism.from_permutation(p, c) for c, p in perms.items()}
    for c, g in gens.items():
        if set(g.permutation) != set(cx.vertices):
            raise ValueError(f"permutation {c!r} is not defined on every vertex")
    return GroupAction(cx, gens, involutions)


def diagonal_action(product, factor_actions: Sequence[GroupAction]) -> GroupAction:
    """Act coordinatewise on a :class:`~cubegirth.lazy.ProductComplex`.

    Every factor action must use the same generator letters.  Passing the
    same letter with the identity on some factor gives an action that is
    trivial there.
    """
    letters = list(factor_actions[0].generators)
    for fa in factor_actions[1:]:
        if list(fa.generators) != letters:
            raise ValueError("factor actions must share generator letters")
    invol = set.intersection(*(set(fa.involutions) for fa in factor_actions))
    n = len(factor_actions)
    gens = {}
    for c in letters:
        maps = tuple(fa.element(c) for fa in factor_actions)
        inv = tuple(fa.element(fa.inverse_letter(c)) for fa in factor_actions)
        gens[c] = Automorphism(
            lambda x, m=maps: tuple(f(y) for f, y in zip(m, x)),
            lambda x, m=inv: tuple(f(y) for f, y in zip(m, x)),
            c,
            factors=(tuple(range(n)), maps),
        )
    return GroupAction(product, gens, involutions=sorted(invol))


# -- automorphism checks -------------------------------------------------------


@dataclass(frozen=True)
class AutomorphismCheck:
    ok: bool
    reason: str = ""
    radius_limited: bool = False
    radius: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_automorphism(space, mapping, radius: int | None = None) -> AutomorphismCheck:
    """Adjacency preserved both ways by ``mapping``.

    On explicit complexes the whole graph is checked and a non-bijective
    map raises :class:`ValueError`.  On lazy spaces the ball of ``radius``
    minus a margin of one is checked and the result is radius limited.
    """
    if isinstance(space, CubeComplexGraph):
        f = mapping if callable(mapping) else mapping.__getitem__
        try:
            images = [f(v) for v in space.vertices]
        except KeyError as exc:
            raise ValueError(f"map undefined at {exc.args[0]!r}") from None
        if len(set(images)) != space.n or any(x not in space.index for x in images):
            raise ValueError("map is not a bijection of the vertex set")
        for v in space.vertices:
            if {f(u) for u in space.neighbors(v)} != set(space.neighbors(f(v))):
                return AutomorphismCheck(False, f"adjacency broken at {v!r}")
        return AutomorphismCheck(True)
    if radius is None:
        raise ValueError("lazy spaces need a radius")
    f = mapping if callable(mapping) else mapping.__getitem__
    back = getattr(mapping, "backward", None)
    ball = _ball_vertices(space, radius)
    for v, d in ball.items():
        if back is not None and back(f(v)) != v:
            raise ValueError(f"map is not invertible at {v!r}")
        if d >= radius:
            continue
        if {f(u) for u in space.neighbors(v)} != set(space.neighbors(f(v))):
            return AutomorphismCheck(False, f"adjacency broken at {v!r}", True, radius)
    return AutomorphismCheck(True, "", True, radius)


def _ball_vertices(space, radius: int, center=None) -> dict:
    center = space.basepoint if center is None else center
    dist = {center: 0}
    q = deque([center])
    while q:
        x = q.popleft()
        if dist[x] == radius:
            continue
        for y in space.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


# -- fixed behaviour -------------------------------------------------------------


@dataclass(frozen=True)
class FixedBehavior:
    """``kind`` is ``"elliptic"`` or ``"no_fixed_cube_within"``."""

    kind: str
    cube: tuple | None
    radius: int | None
    translation_min: int | None = None
    hyperbolic: dict | None = None


def classify_fixed_behavior(action: GroupAction, g, radius: int | None = None, order_probe: int = 12) -> FixedBehavior:
    """Look for a cube that ``g`` maps onto itself.

    On lazy spaces the search covers the ball of ``radius``.  Without a
    fixed cube the smallest displacement over the ball is reported, and a
    hyperbolicity certificate is attached when the family provides one.
    An element of finite order always fixes a cube, so finding none for
    such an element raises :class:`InconclusiveError`.
    """
    name, auto = _as_auto(action, g)
    space = action.space
    finite = isinstance(space, CubeComplexGraph)
    if finite:
        cx = space
    else:
        if radius is None:
            raise ValueError("lazy spaces need a radius")
        cx = ball_graph(space, radius)
    fixed = [v for v in cx.vertices if auto(v) == v]
    if fixed:
        return FixedBehavior("elliptic", (fixed[0],), radius)
    for k in range(1, cx.dim_bound + 1):
        cubes = detect_cubes(cx, k)
        if not cubes:
            break
        for c in cubes:
            vs = set(c.vertices)
            if all(auto(v) in vs for v in c.vertices):
                return FixedBehavior("elliptic", c.vertices, radius)
    tmin = min(space.distance(v, auto(v)) for v in cx.vertices)
    if not finite:
        pts = list(cx.vertices)
        cur = pts
        for _ in range(order_probe):
            cur = [auto(v) for v in cur]
            if cur == pts:
                raise InconclusiveError(
                    f"{name!r} has finite order but fixes no cube within radius {radius}",
                    radius=radius,
                )
    cert = None
    hook = getattr(space, "hyperbolicity_certificate", None)
    if hook is not None:
        cert = hook(auto)
    return FixedBehavior("no_fixed_cube_within", None, radius, tmin, cert)


# -- flips and skewers -------------------------------------------------------


def flips(action: GroupAction, g, h, radius: int | None = None) -> bool:
    """``g.h`` strictly inside ``h*``."""
    _, auto = _as_auto(action, g)
    h = _as_halfspace(action.space, h)
    gh = h.translate(auto)
    if not is_strict_subset(gh, h.star(), radius):
        return False
    if meets(gh, h, radius):  # pragma: no cover - guards the containment logic
        raise AssertionError("flipped halfspace still meets the original")
    return True


def find_flipper(action: GroupAction, h, max_word_len: int, radius: int | None = None) -> str | None:
    """A word flipping ``h``, or None within the length bound.

    Near the basepoint this is the first flipping word in shortlex order.
    When ``h`` lies at distance > 1 and the action can ``locate`` vertices,
    ``h`` is first carried back by ``u^-1`` (``u`` locating its tail), a
    short flipper ``f`` of the carried halfspace is found, and ``u f u^-1``
    is returned after being checked directly.
    """
    h = _as_halfspace(action.space, h)
    sp = action.space
    base = sp.basepoint
    if action.locate is not None and min(sp.distance(base, h.tail), sp.distance(base, h.head)) > 1:
        u = action.reduce(action.locate(h.tail))
        h0 = action.translate(action.inverse_word(u), h)
        f = _shortlex_flipper(action, h0, max_word_len, None)
        if f is not None:
            w = action.reduce(u + f + action.inverse_word(u))
            try:
                if flips(action, w, h, radius):
                    return w
            except InconclusiveError:
                pass
    return _shortlex_flipper(action, h, max_word_len, radius)


def _shortlex_flipper(action: GroupAction, h: Halfspace, max_word_len: int, radius) -> str | None:
    for w in action.words(max_word_len):
        try:
            if flips(action, w, h, radius):
                return w
        except InconclusiveError:
            continue
    return None


@dataclass(frozen=True)
class SkewerCert:
    """``g.h2`` strictly inside ``h1`` with ``h1 <= h2``.

    ``transcript`` holds ``(left, relation, right, witness)`` rows; the
    witness of a strict containment is a vertex of the right side outside
    the left side.
    """

    word: str
    h1: Halfspace
    h2: Halfspace
    transcript: tuple
    strong: bool
    separator: object | None
    factor: int
    radius: int


def double_skewers(
    action: GroupAction, g, h1, h2, strong: bool = False, radius: int | None = None
) -> SkewerCert | None:
    """Certificate that ``g`` double skewers the nested pair ``h1 <= h2``."""
    name, auto = _as_auto(action, g)
    space = action.space
    h1, h2 = _as_halfspace(space, h1), _as_halfspace(space, h2)
    if not is_subset(h1, h2, radius):
        raise ValueError(f"{h1} is not contained in {h2}")
    gh2 = h2.translate(auto)
    if not is_strict_subset(gh2, h1, radius):
        return None
    rows = [
        ("h1", "<=", "h2", None),
        (f"{name}.h2", "<", "h1", gh2.tail),
    ]
    sep = None
    if strong:
        if not is_strongly_separated(space, h1, h2, radius):
            return None
        if isinstance(space, CubeComplexGraph):
            sep = _separators_explicit(space, h1.hyperplane, h2.hyperplane)[0]
        else:
            sep = _first_separator_lazy(space, h1, h2, radius)[0]
        rows.append(("h1", "strongly-separated", "h2", sep))
    used = 0 if isinstance(space, CubeComplexGraph) else _consumed(space, [h1.tail, h1.head, h2.tail, h2.head, gh2.tail, gh2.head])
    factor = space.factor_of(h1.hyperplane)
    return SkewerCert(name, h1, h2, tuple(rows), strong, sep, factor, used)


@dataclass(frozen=True)
class ContractingCert:
    """Strong double skewer: ``g`` is contracting on factor ``factor``."""

    skewer: SkewerCert
    separator: object
    common_transversal: bool
    factor: int


def contracting_certificate(action: GroupAction, g, h1, h2, radius: int | None = None) -> ContractingCert | None:
    cert = double_skewers(action, g, h1, h2, strong=True, radius=radius)
    if cert is None:
        return None
    return ContractingCert(cert, cert.separator, False, cert.factor)


def poles_prefix(
    action: GroupAction, g, h, m: int, radius: int | None = None, check_strong: bool = True
) -> tuple[DescendingChain, DescendingChain]:
    """The chains ``g^i.h`` and ``g^-i.h*`` for ``i = 0..m``."""
    name, auto = _as_auto(action, g)
    inv = auto.inverse()
    h = _as_halfspace(action.space, h)
    fwd, back = [h], [h.star()]
    for _ in range(m):
        fwd.append(fwd[-1].translate(auto))
        back.append(back[-1].translate(inv))
    label = name or "g"
    return (
        make_chain(fwd, f"{label}^i.h", radius, check_strong),
        make_chain(back, f"{label}^-i.h*", radius, check_strong),
    )


def essentiality_witness(action: GroupAction, h, D: int, max_word_len: int) -> str | None:
    """First word moving the hyperplane of ``h`` to distance at least ``D``."""
    space = action.space
    h = _as_halfspace(space, h)
    for w in action.words(max_word_len):
        img = action.translate(w, h)
        if hyperplane_distance(space, img, h) >= D:
            return w
    return None


def find_simultaneous_skewerer(
    action: GroupAction, pairs: Sequence[tuple], max_word_len: int, radius: int | None = None
) -> str | None:
    """First word double skewering every nested pair ``(h1, h2)`` given."""
    space = action.space
    pairs = [(_as_halfspace(space, a), _as_halfspace(space, b)) for a, b in pairs]
    for w in action.words(max_word_len):
        try:
            if all(double_skewers(action, w, a, b, radius=radius) is not None for a, b in pairs):
                return w
        except InconclusiveError:
            continue
    return None
