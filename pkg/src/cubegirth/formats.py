"""Plain-text file formats.

All formats are line oriented, ``#`` starts a comment, tokens are
separated by whitespace.

``cubegraph 1``
    header line, then ``v <id>``, ``e <id1> <id2>`` and optional ``base <id>``.
``pocset 1``
    header line, then ``p <id>`` and ``c <idA> <sideA> <idB> <sideB>``
    meaning halfspace ``(A, sideA)`` is inside ``(B, sideB)``.
``autperm 1``
    header line, then blocks ``a <name>`` followed by ``m <v> <gv>`` lines.
``permgrp 1``
    header line, then ``deg <n>`` and ``g <name> <image list>``.

Ids written by the savers are plain for strings and integers and a
space-free ``repr`` otherwise, so saving what was loaded reproduces the
canonical text exactly.  Errors carry 1-based line and column numbers.
"""

from __future__ import annotations

import ast
from typing import Iterable, Iterator, Mapping

from .core import CubeComplexGraph
from .errors import FormatError
from .girth import PermGroup
from .halfspaces import Pocset

__all__ = [
    "token",
    "untoken",
    "load_cubegraph",
    "save_cubegraph",
    "load_pocset",
    "save_pocset",
    "load_autperm",
    "save_autperm",
    "load_permgrp",
    "save_permgrp",
    "read_any",
]


def token(label) -> str:
    if isinstance(label, str):
        if not label or any(c.isspace() for c in label) or "#" in label:
            raise ValueError(f"label {label!r} cannot be written as a token")
        return label
    return repr(label).replace(" ", "")


def untoken(tok: str):
    """Inverse of :func:`token` for labels that are Python literals."""
    try:
        return ast.literal_eval(tok)
    except (ValueError, SyntaxError):
        return tok


def _records(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """``(line number, [(column, token), ...])`` for every non-blank line."""
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks, col, i = [], 0, 0
        while i < len(line):
            if line[i].isspace():
                i += 1
                continue
            col = i
            while i < len(line) and not line[i].isspace():
                i += 1
            toks.append((col + 1, line[col:i]))
        if toks:
            yield ln, toks


def _header(recs, name: str):
    try:
        ln, toks = next(recs)
    except StopIteration:
        raise FormatError(f"empty file, expected '{name} 1'", 1, 1) from None
    if [t for _, t in toks] != [name, "1"]:
        raise FormatError(f"expected header '{name} 1'", ln, toks[0][0])


def _arity(ln, toks, n: int):
    if len(toks) != n:
        col = toks[n][0] if len(toks) > n else toks[-1][0] + len(toks[-1][1])
        raise FormatError(f"'{toks[0][1]}' takes {n - 1} argument(s), got {len(toks) - 1}", ln, col)


# -- cubegraph ----------------------------------------------------------------------------


def load_cubegraph(text: str, literal_labels: bool = False, dim_bound: int = 8) -> CubeComplexGraph:
    """Parse a cubegraph.  With ``literal_labels`` ids are read back as literals."""
    recs = _records(text)
    _header(recs, "cubegraph")
    conv = untoken if literal_labels else (lambda t: t)
    verts: dict = {}
    edges = []
    base = None
    for ln, toks in recs:
        kind = toks[0][1]
        if kind == "v":
            _arity(ln, toks, 2)
            v = conv(toks[1][1])
            if v in verts:
                raise FormatError(f"vertex {toks[1][1]} declared twice", ln, toks[1][0])
            verts[v] = None
        elif kind == "e":
            _arity(ln, toks, 3)
            (c1, t1), (c2, t2) = toks[1], toks[2]
            for c, t in ((c1, t1), (c2, t2)):
                if conv(t) not in verts:
                    raise FormatError(f"edge uses undeclared vertex {t}", ln, c)
            if t1 == t2:
                raise FormatError("loop edge", ln, c2)
            edges.append((conv(t1), conv(t2)))
        elif kind == "base":
            _arity(ln, toks, 2)
            if base is not None:
                raise FormatError("second base line", ln, toks[0][0])
            base = conv(toks[1][1])
            if base not in verts:
                raise FormatError(f"base {toks[1][1]} is not a declared vertex", ln, toks[1][0])
        else:
            raise FormatError(f"unknown record '{kind}'", ln, toks[0][0])
    try:
        return CubeComplexGraph(edges, vertices=verts, base=base, dim_bound=dim_bound)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc), 1, 1) from None


def save_cubegraph(cx: CubeComplexGraph, include_base: bool = True) -> str:
    lines = ["cubegraph 1"]
    lines += [f"v {token(v)}" for v in cx.vertices]
    for i, j in cx.edge_index:
        lines.append(f"e {token(cx.vertices[i])} {token(cx.vertices[j])}")
    if include_base and cx.base is not None:
        lines.append(f"base {token(cx.base)}")
    return "\n".join(lines) + "\n"


# -- pocset -------------------------------------------------------------------------------


def _side(ln, col, t: str) -> int:
    if t not in ("0", "1"):
        raise FormatError(f"side must be 0 or 1, got {t!r}", ln, col)
    return int(t)


def load_pocset(text: str) -> Pocset:
    from .errors import PocsetError

    recs = _records(text)
    _header(recs, "pocset")
    pairs, cons = [], []
    for ln, toks in recs:
        kind = toks[0][1]
        if kind == "p":
            _arity(ln, toks, 2)
            if toks[1][1] in pairs:
                raise FormatError(f"pair {toks[1][1]} declared twice", ln, toks[1][0])
            pairs.append(toks[1][1])
        elif kind == "c":
            _arity(ln, toks, 5)
            a, b = toks[1][1], toks[3][1]
            for c, t in ((toks[1][0], a), (toks[3][0], b)):
                if t not in pairs:
                    raise FormatError(f"undeclared pair {t}", ln, c)
            cons.append(((a, _side(ln, toks[2][0], toks[2][1])), (b, _side(ln, toks[4][0], toks[4][1]))))
        else:
            raise FormatError(f"unknown record '{kind}'", ln, toks[0][0])
    try:
        return Pocset(pairs, cons)
    except PocsetError as exc:
        raise FormatError(f"not a pocset: {exc}", 1, 1) from None


def save_pocset(p: Pocset) -> str:
    lines = ["pocset 1"] + [f"p {token(x)}" for x in p.pairs]
    for (a, sa), (b, sb) in p.containments():
        lines.append(f"c {token(a)} {sa} {token(b)} {sb}")
    return "\n".join(lines) + "\n"


# -- autperm ------------------------------------------------------------------------------


def load_autperm(text: str, cx: CubeComplexGraph | None = None) -> dict[str, dict]:
    """Named vertex maps.  With ``cx`` tokens are resolved to its labels and
    each map must be a bijection of its vertex set."""
    recs = _records(text)
    _header(recs, "autperm")
    lookup = {token(v): v for v in cx.vertices} if cx is not None else None
    out: dict[str, dict] = {}
    cur = None
    for ln, toks in recs:
        kind = toks[0][1]
        if kind == "a":
            _arity(ln, toks, 2)
            cur = toks[1][1]
            if cur in out:
                raise FormatError(f"map {cur} declared twice", ln, toks[1][0])
            out[cur] = {}
        elif kind == "m":
            _arity(ln, toks, 3)
            if cur is None:
                raise FormatError("'m' before any 'a'", ln, toks[0][0])
            vals = []
            for c, t in toks[1:]:
                if lookup is not None:
                    if t not in lookup:
                        raise FormatError(f"unknown vertex {t}", ln, c)
                    vals.append(lookup[t])
                else:
                    vals.append(t)
            if vals[0] in out[cur]:
                raise FormatError(f"vertex {toks[1][1]} mapped twice", ln, toks[1][0])
            out[cur][vals[0]] = vals[1]
        else:
            raise FormatError(f"unknown record '{kind}'", ln, toks[0][0])
    if cx is not None:
        for name, m in out.items():
            if set(m) != set(cx.vertices) or set(m.values()) != set(cx.vertices):
                raise FormatError(f"map {name} is not a bijection of the vertex set", 1, 1)
    return out


def save_autperm(maps: Mapping[str, Mapping]) -> str:
    lines = ["autperm 1"]
    for name in sorted(maps):
        lines.append(f"a {name}")
        m = maps[name]
        for v in sorted(m, key=token):
            lines.append(f"m {token(v)} {token(m[v])}")
    return "\n".join(lines) + "\n"


# -- permgrp ------------------------------------------------------------------------------


def load_permgrp(text: str) -> PermGroup:
    recs = _records(text)
    _header(recs, "permgrp")
    deg = None
    gens: dict[str, tuple[int, ...]] = {}
    for ln, toks in recs:
        kind = toks[0][1]
        if kind == "deg":
            _arity(ln, toks, 2)
            if deg is not None:
                raise FormatError("second 'deg' line", ln, toks[0][0])
            try:
                deg = int(toks[1][1])
            except ValueError:
                raise FormatError("degree must be an integer", ln, toks[1][0]) from None
            if deg < 1:
                raise FormatError("degree must be positive", ln, toks[1][0])
        elif kind == "g":
            if deg is None:
                raise FormatError("'g' before 'deg'", ln, toks[0][0])
            _arity(ln, toks, 2 + deg)
            name = toks[1][1]
            if name in gens:
                raise FormatError(f"generator {name} declared twice", ln, toks[1][0])
            img = []
            for c, t in toks[2:]:
                try:
                    img.append(int(t))
                except ValueError:
                    raise FormatError(f"image {t!r} is not an integer", ln, c) from None
            if sorted(img) != list(range(deg)):
                raise FormatError(f"generator {name} is not a permutation of 0..{deg - 1}", ln, toks[2][0])
            gens[name] = tuple(img)
        else:
            raise FormatError(f"unknown record '{kind}'", ln, toks[0][0])
    if deg is None:
        raise FormatError("missing 'deg' line", 1, 1)
    return PermGroup(deg, gens)


def save_permgrp(g: PermGroup) -> str:
    lines = ["permgrp 1", f"deg {g.degree}"]
    for name, p in zip(g.names, g.gens):
        lines.append(f"g {name} " + " ".join(map(str, p)))
    return "\n".join(lines) + "\n"


def read_any(text: str):
    """Dispatch on the header line."""
    for _, toks in _records(text):
        kind = toks[0][1]
        loader = {"cubegraph": load_cubegraph, "pocset": load_pocset, "autperm": load_autperm, "permgrp": load_permgrp}.get(kind)
        if loader is None:
            raise FormatError(f"unknown format '{kind}'", 1, toks[0][0])
        return loader(text)
    raise FormatError("empty file", 1, 1)
