"""Lazily generated infinite median graphs.

Two families are provided here; the line complex ``L[X]`` lives in
:mod:`cubegirth.constructions`.

* :class:`FreeProductTree` -- the Cayley graph of a free product of copies
  of ``Z`` and ``Z/2``.  Vertices are reduced words (strings); the empty
  string is the identity.  ``FreeProductTree([0, 0])`` is the 4-regular
  tree of ``F_2 = <a, b>``; ``FreeProductTree([2, 2, 2])`` the 3-regular
  tree of ``Z/2 * Z/2 * Z/2``.
* :class:`ProductComplex` -- a finite product of other spaces (finite
  complexes or lazy families); vertices are tuples.

Every space answers exact distance queries, so halfspace membership never
needs a materialised ball.  :meth:`ball` materialises one when wanted.
"""

from __future__ import annotations

import string
from collections import deque
from functools import lru_cache
from typing import Sequence

from .core import CubeComplexGraph


def ball_graph(space, radius: int, center=None) -> CubeComplexGraph:
    """Materialise the ball of ``radius`` around ``center`` by BFS."""
    center = space.basepoint if center is None else center
    dist = {center: 0}
    queue = deque([center])
    edges = []
    while queue:
        x = queue.popleft()
        for y in space.neighbors(x):
            if y not in dist:
                if dist[x] == radius:
                    continue
                dist[y] = dist[x] + 1
                queue.append(y)
            edges.append((x, y))
    return CubeComplexGraph(
        edges, vertices=dist, base=center, dim_bound=getattr(space, "dim_bound", 8),
        strategy="ball", radius=radius,
    )


class FreeProductTree:
    """Cayley tree of a free product of cyclic groups of order 2 or infinity.

    ``orders[i]`` is 0 for an infinite cyclic factor and 2 for ``Z/2``.
    Generator ``i`` is the ``i``-th lowercase letter; the inverse of an
    infinite-order letter is its uppercase form.  The tree is also the
    group itself, so it doubles as a group object for girth computations
    (``identity``, ``multiply``, ``inverse``).
    """

    is_finite = False
    dim_bound = 1

    def __init__(self, orders: Sequence[int]):
        if not orders:
            raise ValueError("need at least one generator")
        if any(o not in (0, 2) for o in orders):
            raise ValueError("only orders 0 (infinite) and 2 give a tree")
        if len(orders) > 26:
            raise ValueError("at most 26 generators")
        self.orders = tuple(orders)
        self.letters = string.ascii_lowercase[: len(orders)]
        self._involutive = {c for c, o in zip(self.letters, orders) if o == 2}
        alphabet = []
        for c, o in zip(self.letters, orders):
            alphabet.append(c)
            if o == 0:
                alphabet.append(c.upper())
        self.alphabet = tuple(alphabet)
        self.identity = ""
        self.basepoint = ""
        self._reduce = lru_cache(maxsize=1 << 16)(self._reduce_uncached)

    def __repr__(self) -> str:
        return f"FreeProductTree({list(self.orders)})"

    @property
    def degree(self) -> int:
        return len(self.alphabet)

    def _reduce_uncached(self, word: str) -> str:
        out: list[str] = []
        for ch in word:
            if ch.lower() in self._involutive:
                ch = ch.lower()
            elif ch.lower() not in self.letters:
                raise ValueError(f"unknown letter {ch!r}")
            if out and (out[-1] == ch.swapcase() or (out[-1] == ch and ch in self._involutive)):
                out.pop()
            else:
                out.append(ch)
        return "".join(out)

    def reduce(self, word: str) -> str:
        return self._reduce(word)

    def inverse(self, word: str) -> str:
        return self.reduce("".join(
            ch if ch.lower() in self._involutive else ch.swapcase() for ch in reversed(word)
        ))

    def multiply(self, u: str, v: str) -> str:
        return self.reduce(u + v)

    def is_identity(self, w: str) -> bool:
        return self.reduce(w) == ""

    def neighbors(self, w: str) -> tuple[str, ...]:
        return tuple(sorted(self.reduce(w + s) for s in self.alphabet))

    def distance(self, u: str, v: str) -> int:
        return len(self.reduce(self.inverse(u) + v))

    def __contains__(self, w) -> bool:
        return isinstance(w, str) and self.reduce(w) == w

    def halfspace_key(self, u: str, v: str):
        parent, child = (u, v) if len(u) < len(v) else (v, u)
        if self.reduce(parent + child[-1]) != child and self.reduce(child[:-1]) != parent:
            raise ValueError(f"{u!r} and {v!r} are not adjacent")
        return (parent, child), 1 if v == child else 0

    def key_edge(self, key, side: int) -> tuple[str, str]:
        parent, child = key
        return (parent, child) if side == 1 else (child, parent)

    def common_transversal(self, k1, k2) -> bool:
        return False

    def hyperplane_distance(self, k1, k2) -> int:
        return min(self.distance(x, y) for x in k1 for y in k2)

    def factor_of(self, key) -> int:
        return 0

    def ball(self, radius: int) -> CubeComplexGraph:
        return ball_graph(self, radius)

    def hyperbolicity_certificate(self, auto) -> dict | None:
        """Translation length of a left multiplication, when positive.

        For a tree isometry ``g`` and any vertex ``x`` the translation
        length is ``max(0, d(x, g^2 x) - d(x, g x))``; positive means ``g``
        is hyperbolic with an invariant axis.
        """
        x = self.basepoint
        gx = auto(x)
        ggx = auto(gx)
        length = self.distance(x, ggx) - self.distance(x, gx)
        if length <= 0:
            return None
        return {"kind": "tree-axis", "translation_length": length}


class ProductComplex:
    """Product of finitely many spaces; vertices are tuples of coordinates.

    Hyperplane keys are ``(factor index, factor key)``.
    """

    def __init__(self, factors: Sequence):
        if not factors:
            raise ValueError("need at least one factor")
        self.factors = tuple(factors)
        self.is_finite = all(getattr(f, "is_finite", False) for f in factors)
        self.dim_bound = sum(getattr(f, "dim_bound", 8) for f in factors)
        self.basepoint = tuple(f.basepoint for f in factors)

    def __repr__(self) -> str:
        return f"ProductComplex({list(self.factors)!r})"

    def neighbors(self, x: tuple) -> tuple:
        out = []
        for i, f in enumerate(self.factors):
            for y in f.neighbors(x[i]):
                out.append(x[:i] + (y,) + x[i + 1:])
        return tuple(out)

    def distance(self, x: tuple, y: tuple) -> int:
        return sum(f.distance(a, b) for f, a, b in zip(self.factors, x, y))

    def __contains__(self, x) -> bool:
        return (
            isinstance(x, tuple) and len(x) == len(self.factors)
            and all(c in f for c, f in zip(x, self.factors))
        )

    def coordinate(self, u: tuple, v: tuple) -> int:
        diff = [i for i in range(len(self.factors)) if u[i] != v[i]]
        if len(diff) != 1:
            raise ValueError(f"{u!r} and {v!r} are not adjacent")
        return diff[0]

    def halfspace_key(self, u: tuple, v: tuple):
        i = self.coordinate(u, v)
        key, side = self.factors[i].halfspace_key(u[i], v[i])
        return (i, key), side

    def _nontrivial(self, i: int) -> bool:
        f = self.factors[i]
        return not getattr(f, "is_finite", False) or len(f.neighbors(f.basepoint)) > 0

    def common_transversal(self, k1, k2) -> bool:
        """Whether some hyperplane crosses both.

        Only meaningful for two hyperplanes of the same factor (hyperplanes
        in different factors are themselves transverse): then every
        hyperplane of any other nontrivial factor crosses both.
        """
        (i, a), (j, b) = k1, k2
        if i != j:
            return True
        if any(self._nontrivial(t) for t in range(len(self.factors)) if t != i):
            return True
        return self.factors[i].common_transversal(a, b)

    def key_edge(self, key, side: int) -> tuple[tuple, tuple]:
        i, k = key
        t, h = self.factors[i].key_edge(k, side)
        base = self.basepoint
        return base[:i] + (t,) + base[i + 1:], base[:i] + (h,) + base[i + 1:]

    def hyperplane_distance(self, k1, k2) -> int:
        (i, a), (j, b) = k1, k2
        if i != j:
            return 0
        return self.factors[i].hyperplane_distance(a, b)

    def factor_of(self, key) -> int:
        return key[0]

    def ball(self, radius: int) -> CubeComplexGraph:
        return ball_graph(self, radius)
