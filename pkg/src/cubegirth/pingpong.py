"""Ping-pong certificates for free subgroups and infinite girth.

Everything lives on ``Y``, the disjoint union of the factors of the space
(a single factor unless the space is a :class:`~cubegirth.lazy.ProductComplex`).
Points of ``Y`` are ``(factor, vertex)``; sets are finite unions of
:class:`YHalfspace`.  An attractor ``U`` has exactly one pair ``(P, Nn)``
per factor.

Conditions that quantify over every power ``k != 0`` are certified by
nesting.  For an element ``s`` and ``U`` with components ``(P_i, Nn_i)``:

    s . Nn_i*  <=  P_{s(i)}        s . P_i   <  P_{s(i)}
    s^-1 . P_i* <= Nn_{s^-1(i)}    s^-1 . Nn_i < Nn_{s^-1(i)}

give ``s^k (Y - U) <= U`` for all ``k != 0`` by induction on ``|k|``.
Every containment is decided exactly; a radius budget can only turn a
verdict into ``inconclusive``, never into a false pass.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .actions import GroupAction, tree_action
from .errors import ChainError, FormatError, InconclusiveError
from .halfspaces import (
    Halfspace,
    _as_halfspace,
    chain_disjointness,
    is_strict_subset,
    is_subset,
    make_chain,
    meets,
    union_contains,
)
from .lazy import FreeProductTree, ProductComplex

__all__ = [
    "YHalfspace",
    "Attractor",
    "PingPongCert",
    "Condition",
    "Verdict",
    "DaggerList",
    "factor_spaces",
    "ytranslate",
    "check_free_cert",
    "check_girth_cert",
    "build_cert_from_poles",
    "verify_dagger",
    "free_sanity",
    "action_from_spec",
    "cert_to_json",
    "cert_from_json",
]


# -- the disjoint union Y ---------------------------------------------------------


def factor_spaces(action: GroupAction) -> list:
    sp = action.space
    return list(sp.factors) if isinstance(sp, ProductComplex) else [sp]


def _factor_map(action: GroupAction, word: str, i: int):
    auto = action.element(word)
    if not isinstance(action.space, ProductComplex):
        return 0, auto
    if auto.factors is None:
        raise ValueError(f"element {word!r} has no factor decomposition")
    perm, maps = auto.factors
    return perm[i], maps[i]


@dataclass(frozen=True)
class YHalfspace:
    factor: int
    h: Halfspace

    def star(self) -> "YHalfspace":
        return YHalfspace(self.factor, self.h.star())

    def contains(self, point: tuple) -> bool:
        return point[0] == self.factor and self.h.contains(point[1])

    def __repr__(self) -> str:
        return f"Y[{self.factor}]({self.h.tail!r}->{self.h.head!r})"


def ytranslate(action: GroupAction, word: str, yh: YHalfspace) -> YHalfspace:
    j, f = _factor_map(action, word, yh.factor)
    return YHalfspace(j, yh.h.translate(f))


def ypoint(action: GroupAction, word: str, p: tuple) -> tuple:
    j, f = _factor_map(action, word, p[0])
    return j, f(p[1])


def _yh(action: GroupAction, spec) -> YHalfspace:
    if isinstance(spec, YHalfspace):
        return spec
    if isinstance(spec, Halfspace):
        return YHalfspace(0, spec)
    i, h = spec
    return YHalfspace(i, _as_halfspace(factor_spaces(action)[i], h))


@dataclass(frozen=True)
class Attractor:
    """``U = union of (P_i u Nn_i)``, one pair per factor."""

    parts: tuple  # ((P, Nn), ...) as YHalfspace pairs

    @property
    def halfspaces(self) -> list[YHalfspace]:
        return [h for p in self.parts for h in p]

    def contains(self, point: tuple) -> bool:
        return any(h.contains(point) for h in self.halfspaces)

    def in_factor(self, i: int) -> list[Halfspace]:
        return [y.h for y in self.halfspaces if y.factor == i]

    def component(self, i: int):
        for P, Nn in self.parts:
            if P.factor == i:
                return P, Nn
        return None

    def translate(self, action: GroupAction, word: str) -> list[YHalfspace]:
        return [ytranslate(action, word, h) for h in self.halfspaces]

    @classmethod
    def from_poles(cls, action: GroupAction, word: str, halfspaces: Sequence[YHalfspace], N: int) -> "Attractor":
        fwd, back = action.power(word, N), action.power(word, -N)
        return cls(tuple((ytranslate(action, fwd, h), ytranslate(action, back, h.star())) for h in halfspaces))


def _contained_in(yh: YHalfspace, U: Attractor, radius) -> bool:
    parts = U.in_factor(yh.factor)
    return bool(parts) and union_contains(yh.h, parts, radius)


def _disjoint(a: YHalfspace, b: YHalfspace, radius) -> bool:
    return a.factor != b.factor or not meets(a.h, b.h, radius)


# -- verdicts ---------------------------------------------------------------------


@dataclass
class Condition:
    name: str
    status: str  # pass | fail | inconclusive
    method: str  # direct | nesting
    detail: str = ""
    radius: int | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "method": self.method}
        if self.detail:
            out["detail"] = self.detail
        if self.radius is not None:
            out["radius"] = self.radius
        return out


@dataclass
class Verdict:
    status: str
    conditions: list[Condition]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def failed(self) -> list[Condition]:
        return [c for c in self.conditions if c.status != "pass"]

    def to_json(self) -> dict:
        return {"status": self.status, "conditions": [c.to_json() for c in self.conditions], "notes": self.notes}


def _combine(conds: list[Condition], notes=None) -> Verdict:
    st = {c.status for c in conds}
    status = "fail" if "fail" in st else "inconclusive" if "inconclusive" in st else "pass"
    return Verdict(status, conds, list(notes or []))


def _run(conds: list[Condition], name: str, method: str, fn) -> None:
    try:
        bad = fn()
    except InconclusiveError as exc:
        conds.append(Condition(name, "inconclusive", method, str(exc), exc.radius))
        return
    conds.append(Condition(name, "fail" if bad else "pass", method, bad or ""))


# -- individual checks ------------------------------------------------------------


def _point_outside(action, x, sets: dict, radius) -> str:
    for label, hs in sets.items():
        for h in hs:
            if h.contains(x):
                return f"x lies in {label} ({h!r})"
    return ""


def _translates(action, U: Attractor, gens: Sequence[str]) -> dict:
    out = {}
    for g in gens:
        out[g] = U.translate(action, g)
        gi = action.inverse_word(g)
        out[gi] = U.translate(action, gi)
    return out


def _nesting(action, word: str, U: Attractor, n_factors: int, strict: bool, radius) -> str:
    """Empty string when the four nesting containments hold for ``word``."""
    if action.reduce(word) == "" and strict:
        return "element is trivial"
    inv = action.inverse_word(word)
    for i in range(n_factors):
        comp = U.component(i)
        if comp is None:
            return f"no attractor component in factor {i}"
        P, Nn = comp
        for w, src, keep, label in ((word, Nn.star(), P, "s.Nn*"), (inv, P.star(), Nn, "s^-1.P*")):
            img = ytranslate(action, w, src)
            tgt = U.component(img.factor)
            if tgt is None:
                return f"{label} lands in factor {img.factor} without a component"
            t = tgt[0] if keep is P else tgt[1]
            if not is_subset(img.h, t.h, radius):
                return f"factor {i}: {label} not inside its target"
        for w, src, idx, label in ((word, P, 0, "s.P"), (inv, Nn, 1, "s^-1.Nn")):
            img = ytranslate(action, w, src)
            tgt = U.component(img.factor)
            if tgt is None:
                return f"{label} lands in factor {img.factor} without a component"
            rel = is_strict_subset if strict else is_subset
            if not rel(img.h, tgt[idx].h, radius):
                return f"factor {i}: {label} not {'strictly ' if strict else ''}inside its target"
    return ""


def _all_disjoint(A: list[YHalfspace], U: Attractor, radius) -> str:
    for a in A:
        for b in U.halfspaces:
            if not _disjoint(a, b, radius):
                return f"{a!r} meets {b!r}"
    return ""


def _direct_powers(action, word: str, x, sources: list[YHalfspace], U: Attractor, K: int, radius) -> str:
    for k in [k for k in range(-K, K + 1) if k]:
        w = action.power(word, k)
        if not U.contains(ypoint(action, w, x)):
            return f"power {k} sends x outside"
        for h in sources:
            if not _contained_in(ytranslate(action, w, h), U, radius):
                return f"power {k} sends {h!r} outside"
    return ""


def _check(action, sigma, tau, Us, Ut, x, gens, K, radius, strict=True) -> list[Condition]:
    n = len(factor_spaces(action))
    conds: list[Condition] = []
    ts, tt = _translates(action, Us, gens), _translates(action, Ut, gens)
    sets = {"U_sigma": Us.halfspaces, "U_tau": Ut.halfspaces}
    for g, hs in ts.items():
        sets[f"{g}.U_sigma"] = hs
    for g, hs in tt.items():
        sets[f"{g}.U_tau"] = hs
    _run(conds, "x outside U_sigma, U_tau and generator translates", "direct", lambda: _point_outside(action, x, sets, radius))
    src_t = Ut.halfspaces + [h for hs in tt.values() for h in hs]
    src_s = Us.halfspaces + [h for hs in ts.values() for h in hs]
    _run(conds, "U_tau and translates avoid U_sigma", "direct", lambda: _all_disjoint(src_t, Us, radius))
    _run(conds, "U_sigma and translates avoid U_tau", "direct", lambda: _all_disjoint(src_s, Ut, radius))
    _run(conds, "sigma powers push Y - U_sigma into U_sigma", "nesting", lambda: _nesting(action, sigma, Us, n, strict, radius))
    _run(conds, "tau powers push Y - U_tau into U_tau", "nesting", lambda: _nesting(action, tau, Ut, n, strict, radius))
    _run(conds, f"sigma^k(x, U_tau, translates) inside U_sigma for 0<|k|<={K}", "direct",
         lambda: _direct_powers(action, sigma, x, src_t, Us, K, radius))
    _run(conds, f"tau^k(x, U_sigma, translates) inside U_tau for 0<|k|<={K}", "direct",
         lambda: _direct_powers(action, tau, x, src_s, Ut, K, radius))
    return conds


def check_free_cert(action: GroupAction, sigma: str, tau: str, U_sigma: Attractor, U_tau: Attractor, x, K: int = 3,
                    radius: int | None = None) -> Verdict:
    """Free-subgroup ping-pong for ``<sigma, tau>`` (no extra generators)."""
    x = _ypt(x)
    return _combine(_check(action, sigma, tau, U_sigma, U_tau, x, (), K, radius))


def _ypt(x):
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], int):
        return x
    return (0, x)


@dataclass
class PingPongCert:
    sigma: str
    tau: str
    U_sigma: Attractor
    U_tau: Attractor
    x: tuple
    gens: tuple
    N: int
    M: int
    base_sigma: str = ""
    base_tau: str = ""
    transcript: list = field(default_factory=list)

    def swapped(self) -> "PingPongCert":
        return PingPongCert(self.tau, self.sigma, self.U_tau, self.U_sigma, self.x, self.gens, self.N, self.M,
                            self.base_tau, self.base_sigma, list(self.transcript))


def check_girth_cert(cert: PingPongCert, action: GroupAction, K: int = 3, radius: int | None = None,
                     replay: bool = True) -> Verdict:
    """All conditions of the infinite-girth criterion for ``cert``.

    A pass is replayed with ``K + 1`` and ``radius + 2``; a different
    outcome downgrades the verdict to inconclusive.
    """
    conds = _check(action, cert.sigma, cert.tau, cert.U_sigma, cert.U_tau, cert.x, cert.gens, K, radius)
    v = _combine(conds)
    if v.passed and replay:
        again = check_girth_cert(cert, action, K + 1, None if radius is None else radius + 2, replay=False)
        if not again.passed:
            v.status = "inconclusive"
            v.notes.append("replay with K+1 and larger radius did not pass")
        else:
            v.notes.append(f"replayed with K={K + 1}")
    return v


# -- pole lists ---------------------------------------------------------------------


@dataclass
class ChainVerdict:
    label: str
    factor: int
    ok: bool
    failure_index: int | None
    inconclusive: bool
    length: int
    strong: bool = True


@dataclass
class DaggerList:
    chains: list[ChainVerdict]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.chains)

    def __len__(self) -> int:
        return len(self.chains)


def _chain_verdict(label, factor, hs, check_strong=True) -> ChainVerdict:
    try:
        ch = make_chain(hs, label, None, check_strong)
    except ChainError as exc:
        return ChainVerdict(label, factor, False, exc.index, False, len(hs))
    strong = ch.strongly_separated or len(ch) == 1
    return ChainVerdict(label, factor, strong and not ch.truncated, None, ch.truncated, len(ch), strong)


def verify_dagger(action: GroupAction, sigma: str, gens: Sequence[str], factor_halfspaces, m: int) -> DaggerList:
    """Pole chains of ``sigma`` and their generator translates, to depth ``m``.

    Each chain is checked to be strictly descending with consecutive
    members strongly separated.
    """
    hs = [_yh(action, h) for h in factor_halfspaces]
    sigma_inv = action.inverse_word(sigma)
    chains = []
    prefixes = [""] + [w for g in gens for w in (g, action.inverse_word(g))]
    for yh in hs:
        fwd = [ytranslate(action, action.power(sigma, n), yh) for n in range(m + 1)]
        back = [ytranslate(action, action.power(sigma_inv, n), yh.star()) for n in range(m + 1)]
        for p in prefixes:
            for tag, seq in (("sigma^n.h", fwd), ("sigma^-n.h*", back)):
                img = [ytranslate(action, p, y) for y in seq]
                chains.append(_chain_verdict(f"{p}.{tag}" if p else tag, img[0].factor, [y.h for y in img]))
    return DaggerList(chains)


# -- building certificates ---------------------------------------------------------------


def _candidate_points(action: GroupAction, radius: int):
    from .lazy import ball_graph

    for i, sp in enumerate(factor_spaces(action)):
        if getattr(sp, "is_finite", False):
            verts = sorted(sp.vertices, key=lambda v: (sp.distance(sp.basepoint, v), repr(v)))
        else:
            ball = ball_graph(sp, radius)
            verts = sorted(ball.vertices, key=lambda v: (sp.distance(sp.basepoint, v), repr(v)))
        for v in verts:
            yield (i, v)


def build_cert_from_poles(
    action: GroupAction,
    sigma: str,
    tau: str,
    gens: Sequence[str],
    factor_halfspaces,
    m: int = 3,
    N_max: int = 6,
    M_max: int = 16,
    radius: int | None = None,
    x_radius: int = 4,
) -> PingPongCert | None:
    """Smallest ``N``, then smallest ``M``, giving a passing certificate.

    ``factor_halfspaces`` is ``(sigma_halfspaces, tau_halfspaces)``: per
    factor a halfspace ``h`` with ``sigma.h`` strictly inside ``h`` (same
    for ``tau``).  The attractors are built from the poles at depth ``N``
    and the certified elements are ``sigma^M``, ``tau^M``.  Returns None
    when nothing within the bounds works.
    """
    hs_s, hs_t = ([_yh(action, h) for h in side] for side in factor_halfspaces)
    n = len(factor_spaces(action))
    for label, word, hs in (("sigma", sigma, hs_s), ("tau", tau, hs_t)):
        if sorted(y.factor for y in hs) != list(range(n)):
            raise ValueError(f"{label} needs exactly one halfspace per factor")
        for y in hs:
            img = ytranslate(action, word, y)
            if img.factor != y.factor or not is_strict_subset(img.h, y.h, radius):
                raise ValueError(f"{label} does not skewer {y!r}")
    transcript = []
    dagger = verify_dagger(action, sigma, gens, hs_s, m)
    transcript.append({"dagger_chains": len(dagger), "dagger_ok": dagger.ok})
    for N in range(1, N_max + 1):
        Us = Attractor.from_poles(action, sigma, hs_s, N)
        Ut = Attractor.from_poles(action, tau, hs_t, N)
        ts, tt = _translates(action, Us, gens), _translates(action, Ut, gens)
        src_s = Us.halfspaces + [h for v in ts.values() for h in v]
        src_t = Ut.halfspaces + [h for v in tt.values() for h in v]
        try:
            bad = _all_disjoint(src_s, Ut, radius) or _all_disjoint(src_t, Us, radius)
        except InconclusiveError as exc:
            bad = f"inconclusive ({exc})"
        if bad:
            transcript.append({"N": N, "disjoint": False, "reason": bad})
            continue
        allsets = src_s + src_t
        x = next((p for p in _candidate_points(action, x_radius) if not any(h.contains(p) for h in allsets)), None)
        if x is None:
            transcript.append({"N": N, "disjoint": True, "point": None})
            continue
        transcript.append({"N": N, "disjoint": True, "point": _jsonable(x)})
        for M in range(1, M_max + 1):
            s1, t1 = action.power(sigma, M), action.power(tau, M)
            try:
                bad = _nesting(action, s1, Us, n, True, radius) or _nesting(action, t1, Ut, n, True, radius)
            except InconclusiveError as exc:
                bad = f"inconclusive ({exc})"
            transcript.append({"N": N, "M": M, "nesting": not bad, **({"reason": bad} if bad else {})})
            if not bad:
                return PingPongCert(s1, t1, Us, Ut, x, tuple(gens), N, M, sigma, tau, transcript)
    return None


def pole_disjointness(action, sigma: str, tau: str, h_sigma, h_tau, m: int, radius=None):
    """Where the forward pole chains of ``sigma`` and ``tau`` stop meeting."""
    ys, yt = _yh(action, h_sigma), _yh(action, h_tau)
    a = make_chain([ytranslate(action, action.power(sigma, k), ys).h for k in range(m + 1)], "sigma", radius, False)
    b = make_chain([ytranslate(action, action.power(tau, k), yt).h for k in range(m + 1)], "tau", radius, False)
    return chain_disjointness(a, b, m, radius)


def free_sanity(action: GroupAction, cert: PingPongCert, trials: int = 1000, max_len: int = 8, seed: int = 0) -> int:
    """Count random reduced words in ``sigma, tau`` that fix ``x`` (expect 0)."""
    rng = random.Random(seed)
    letters = [(cert.sigma, 0), (action.inverse_word(cert.sigma), 0), (cert.tau, 1), (action.inverse_word(cert.tau), 1)]
    fixed = 0
    for _ in range(trials):
        L = rng.randint(1, max_len)
        word, last = [], None
        while len(word) < L:
            i = rng.randrange(4)
            if last is not None and i == last ^ 1:
                continue
            word.append(i)
            last = i
        w = action.reduce("".join(letters[i][0] for i in reversed(word)))
        if ypoint(action, w, cert.x) == cert.x:
            fixed += 1
    return fixed


# -- serialisation ---------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(y) for y in x)
    return x


def action_from_spec(spec: dict) -> GroupAction:
    """``{"kind": "tree", "orders": [...]}`` or ``{"kind": "tree-product", "orders": [...], "relabel": [...]}``."""
    from .actions import diagonal_action

    kind = spec.get("kind")
    if kind == "tree":
        return tree_action(FreeProductTree(spec["orders"]))
    if kind == "tree-product":
        trees = [FreeProductTree(spec["orders"]) for _ in spec["relabel"]]
        acts = [tree_action(t, r) for t, r in zip(trees, spec["relabel"])]
        return diagonal_action(ProductComplex(trees), acts)
    raise ValueError(f"unknown action kind {kind!r}")


def _yh_json(y: YHalfspace) -> dict:
    return {"factor": y.factor, "hyperplane": _jsonable(y.h.hyperplane), "side": y.h.side}


def _yh_load(action, d) -> YHalfspace:
    sp = factor_spaces(action)[d["factor"]]
    return YHalfspace(d["factor"], Halfspace.from_key(sp, _tupled(d["hyperplane"]), d["side"]))


def cert_to_json(cert: PingPongCert, action_spec: dict | None = None) -> dict:
    out = {
        "format": "ppcert v1",
        "sigma": cert.sigma,
        "tau": cert.tau,
        "base_sigma": cert.base_sigma,
        "base_tau": cert.base_tau,
        "N": cert.N,
        "M": cert.M,
        "x": _jsonable(cert.x),
        "gens": list(cert.gens),
        "U_sigma": [[_yh_json(p), _yh_json(q)] for p, q in cert.U_sigma.parts],
        "U_tau": [[_yh_json(p), _yh_json(q)] for p, q in cert.U_tau.parts],
        "transcript": cert.transcript,
    }
    if action_spec is not None:
        out["action"] = action_spec
    return out


def cert_from_json(data, action: GroupAction | None = None) -> tuple[PingPongCert, GroupAction]:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    if data.get("format") != "ppcert v1":
        raise FormatError("expected format 'ppcert v1'", 1, 1)
    try:
        action = action or action_from_spec(data["action"])
        cert = PingPongCert(
            data["sigma"], data["tau"],
            Attractor(tuple((_yh_load(action, p), _yh_load(action, q)) for p, q in data["U_sigma"])),
            Attractor(tuple((_yh_load(action, p), _yh_load(action, q)) for p, q in data["U_tau"])),
            _tupled(data["x"]), tuple(data["gens"]), data["N"], data["M"],
            data.get("base_sigma", ""), data.get("base_tau", ""), data.get("transcript", []),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad certificate field: {exc}", 1, 1) from None
    return cert, action
