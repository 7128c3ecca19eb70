"""Growing a facing triple into many strongly separated facing pairs.

Start from halfspaces ``(a, b, c)`` that are pairwise disjoint with ``a``
and ``b`` strongly separated.  A word flipping ``c*`` carries ``(a, b)``
into ``c``, giving a second pair.  From ``n - 1`` pairs, a flip ``g`` of
``b*_{n-1}`` moves ``(a_1, b_1, a_{n-1})`` inside ``b_{n-1}``; a flip ``h``
of ``g.a*_{n-1}`` then moves ``(g.a_1, g.b_1)`` inside ``g.a_{n-1}``.  The
last old pair is replaced by ``(g.a_1, g.b_1)`` and ``(h.g.a_1, h.g.b_1)``
is appended.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .actions import GroupAction, find_flipper, flips
from .errors import ConstructionError, InconclusiveError
from .halfspaces import (
    Halfspace,
    _as_halfspace,
    facing_tuple_check,
    is_strongly_separated,
    is_subset,
    meets,
)

__all__ = ["FacingFamily", "FamilyReport", "amplify_facing", "verify_family", "find_facing_triple", "halfspace_json"]


def halfspace_json(h: Halfspace) -> dict:
    return {"tail": _plain(h.tail), "head": _plain(h.head)}


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(y) for y in x]
    return x


@dataclass
class FacingFamily:
    pairs: list[tuple[Halfspace, Halfspace]]
    transcript: list[dict] = field(default_factory=list)
    complete: bool = True
    failure_index: int | None = None

    @property
    def halfspaces(self) -> list[Halfspace]:
        return [h for p in self.pairs for h in p]

    def __len__(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {
            "pairs": [[halfspace_json(a), halfspace_json(b)] for a, b in self.pairs],
            "complete": self.complete,
            "failure_index": self.failure_index,
            "transcript": self.transcript,
        }


@dataclass
class FamilyReport:
    disjoint: list[list[bool | None]]
    strongly_separated: list[bool | None]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"disjoint": self.disjoint, "strongly_separated": self.strongly_separated, "failures": self.failures, "ok": self.ok}


def _tri(fn, *args):
    try:
        return fn(*args)
    except InconclusiveError:
        return None


def verify_family(space, family, radius: int | None = None) -> FamilyReport:
    """Re-check every invariant of a family from scratch.

    ``family`` is a :class:`FacingFamily` or a list of halfspace pairs.
    Entries are ``None`` when the radius budget ran out.
    """
    pairs = family.pairs if isinstance(family, FacingFamily) else family
    hs = [_as_halfspace(space, h) for p in pairs for h in p]
    m = len(hs)
    disjoint: list[list[bool | None]] = [[i != j for j in range(m)] for i in range(m)]
    failures = []
    for i, j in itertools.combinations(range(m), 2):
        r = _tri(meets, hs[i], hs[j], radius)
        d = None if r is None else not r
        disjoint[i][j] = disjoint[j][i] = d
        if d is None:
            failures.append(f"halfspaces {i} and {j}: inconclusive within radius")
        elif not d:
            failures.append(f"halfspaces {i} and {j} intersect")
    strong = []
    for p in range(len(pairs)):
        s = _tri(is_strongly_separated, space, hs[2 * p], hs[2 * p + 1], radius)
        strong.append(s)
        if s is None:
            failures.append(f"pair {p + 1}: strong separation inconclusive")
        elif not s:
            failures.append(f"pair {p + 1} is not strongly separated")
    return FamilyReport(disjoint, strong, failures)


def _flip(action, target: Halfspace, max_len: int, radius):
    w = find_flipper(action, target, max_len, radius)
    if w is not None and not flips(action, w, target, radius):  # pragma: no cover
        raise ConstructionError("flip search returned a non-flipping word", [])
    return w


def _claim(transcript, label, small: Halfspace, big: Halfspace, radius) -> None:
    ok = is_subset(small, big, radius)
    transcript.append({"claim": label, "holds": ok})
    if not ok:
        raise ConstructionError(f"containment claim failed: {label}", transcript)


def amplify_facing(
    action: GroupAction,
    triple,
    n: int,
    flip_search_len: int = 8,
    radius: int | None = None,
) -> FacingFamily:
    """Build ``n`` facing pairs starting from ``triple = (a, b, c)``.

    When no flip is found within ``flip_search_len`` the partial family is
    returned with ``complete=False`` and ``failure_index`` set to the pair
    count that could not be reached.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    space = action.space
    a, b, c = (_as_halfspace(space, h) for h in triple)
    if not facing_tuple_check(space, [a, b, c], radius):
        raise ValueError("triple is not facing")
    if not is_strongly_separated(space, a, b, radius):
        raise ValueError("first two halfspaces are not strongly separated")
    fam = FacingFamily([(a, b)])
    if n == 1:
        return fam

    tr = fam.transcript
    w = _flip(action, c.star(), flip_search_len, radius)
    if w is None:
        fam.complete, fam.failure_index = False, 2
        tr.append({"step": 2, "flip_target": halfspace_json(c.star()), "word": None})
        return fam
    a2, b2 = action.translate(w, a), action.translate(w, b)
    tr.append({"step": 2, "flip_target": halfspace_json(c.star()), "word": w,
               "pair": [halfspace_json(a2), halfspace_json(b2)]})
    _claim(tr, "a_2 inside c", a2, c, radius)
    _claim(tr, "b_2 inside c", b2, c, radius)
    fam.pairs.append((a2, b2))
    _check(space, fam, radius)

    for k in range(3, n + 1):
        a_last, b_last = fam.pairs[-1]
        a1, b1 = fam.pairs[0]
        g = _flip(action, b_last.star(), flip_search_len, radius)
        if g is None:
            fam.complete, fam.failure_index = False, k
            tr.append({"step": k, "flip_target": halfspace_json(b_last.star()), "word": None})
            return fam
        a1p, b1p, alp = (action.translate(g, h) for h in (a1, b1, a_last))
        row = {"step": k, "first_flip": g, "first_target": halfspace_json(b_last.star()),
               "primed": [halfspace_json(a1p), halfspace_json(b1p)], "primed_last": halfspace_json(alp)}
        tr.append(row)
        _claim(tr, f"a'_1 inside b_{k - 1}", a1p, b_last, radius)
        _claim(tr, f"b'_1 inside b_{k - 1}", b1p, b_last, radius)
        _claim(tr, f"a'_{k - 1} inside b_{k - 1}", alp, b_last, radius)
        h = _flip(action, alp.star(), flip_search_len, radius)
        if h is None:
            fam.complete, fam.failure_index = False, k
            row["second_flip"] = None
            return fam
        a1pp, b1pp = action.translate(h, a1p), action.translate(h, b1p)
        row.update({"second_flip": h, "second_target": halfspace_json(alp.star()),
                    "double_primed": [halfspace_json(a1pp), halfspace_json(b1pp)],
                    "replaced_pair": k - 1})
        _claim(tr, f"a''_1 inside a'_{k - 1}", a1pp, alp, radius)
        _claim(tr, f"b''_1 inside a'_{k - 1}", b1pp, alp, radius)
        fam.pairs[-1] = (a1p, b1p)
        fam.pairs.append((a1pp, b1pp))
        _check(space, fam, radius)
    return fam


def _check(space, fam: FacingFamily, radius) -> None:
    rep = verify_family(space, fam, radius)
    if not rep.ok:
        raise ConstructionError("family invariant failed: " + "; ".join(rep.failures), fam.transcript)


def find_facing_triple(space, radius: int, budget: int | None = None):
    """Exhaustive scan for a facing triple ``(a, b, c)`` with ``a, b`` strongly separated.

    Candidates are the halfspaces of edges in the ball of ``radius``; the
    first triple in scan order is returned, or None.
    """
    from .lazy import ball_graph

    ball = ball_graph(space, radius)
    hs = []
    seen = set()
    for u, v in ball.edges():
        for t, hd in ((u, v), (v, u)):
            h = Halfspace(space, t, hd)
            if h.key not in seen:
                seen.add(h.key)
                hs.append(h)
    for a, b in itertools.combinations(hs, 2):
        if _tri(meets, a, b, budget) is not False:
            continue
        if not _tri(is_strongly_separated, space, a, b, budget):
            continue
        for c in hs:
            if c in (a, b):
                continue
            if _tri(meets, a, c, budget) is False and _tri(meets, b, c, budget) is False:
                return a, b, c
    return None
