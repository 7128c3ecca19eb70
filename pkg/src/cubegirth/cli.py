"""Command-line entry point.

Every subcommand prints one JSON report on standard output.  Exit codes:
0 pass, 1 fail or counterexample, 2 inconclusive, 3 input error.
All work is single threaded; ``CUBEGIRTH_THREADS`` is only echoed.

Halfspaces are written ``TAIL:HEAD`` (the side of edge ``TAIL -- HEAD``
containing ``HEAD``; on a free-product tree the empty word is the empty
string, so ``:a`` is the side of the ``a`` edge away from the identity),
or ``hK/S`` for side ``S`` of hyperplane ``K`` of a finite complex.  In
certificates a leading ``I@`` selects factor ``I`` of a product.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from typing import Callable

from . import __version__
from .errors import (
    CubeGirthError,
    FormatError,
    GenerationError,
    InconclusiveError,
    RepresentationError,
    ValidationError,
)

log = logging.getLogger("cubegirth")

REPORT_VERSION = 1
EXIT = {"pass": 0, "fail": 1, "inconclusive": 2, "error": 3}


class InputError(Exception):
    pass


def _j(x):
    """JSON-ready copy with tuples as lists and sets sorted."""
    if isinstance(x, dict):
        return {str(k): _j(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_j(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_j(v) for v in x), key=repr)
    if hasattr(x, "item") and callable(x.item):
        return x.item()
    return x


def _read(path: str, digests: dict) -> str:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    digests[path] = hashlib.sha256(data).hexdigest()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError("file is not UTF-8 text", 1, 1) from None


# -- shared loaders -------------------------------------------------------------------


def _complex(path, ctx):
    from .formats import load_cubegraph

    return load_cubegraph(_read(path, ctx["digests"]), literal_labels=True)


def _group(path, ctx):
    from .formats import load_permgrp

    return load_permgrp(_read(path, ctx["digests"]))


def _orders(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad free-product orders {text!r}") from None


def _action(args, ctx):
    """A group action from ``--tree`` or ``--complex`` plus ``--action``."""
    from .actions import permutation_action, tree_action
    from .lazy import FreeProductTree

    if getattr(args, "tree", None):
        try:
            return tree_action(FreeProductTree(_orders(args.tree)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if getattr(args, "complex", None) and getattr(args, "action", None):
        from .formats import load_autperm

        cx = _complex(args.complex, ctx)
        maps = load_autperm(_read(args.action, ctx["digests"]), cx)
        invol = [n for n, m in maps.items() if all(m[m[v]] == v for v in m)]
        try:
            return permutation_action(cx, maps, involutions=invol)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError("give --tree ORDERS, or --complex FILE with --action FILE")


def _label(space, tok: str):
    from .formats import untoken

    if getattr(space, "is_finite", False):
        lookup = {}
        from .formats import token

        for v in space.vertices:
            lookup[token(v)] = v
        if tok not in lookup:
            raise InputError(f"unknown vertex {tok!r}")
        return lookup[tok]
    return untoken(tok) if tok[:1] in "([0123456789-" else tok


def _halfspace(space, text: str):
    import re

    from .halfspaces import Halfspace

    m = re.fullmatch(r"h(\d+)/([01])", text)
    try:
        if m:
            if not getattr(space, "is_finite", False):
                raise InputError("hK/S halfspaces need a finite complex")
            return Halfspace.from_key(space, int(m.group(1)), int(m.group(2)))
        if ":" not in text:
            raise InputError(f"halfspace {text!r} is neither TAIL:HEAD nor hK/S")
        t, h = text.split(":", 1)
        return Halfspace(space, _label(space, t), _label(space, h))
    except (ValueError, IndexError, KeyError) as exc:
        raise InputError(f"bad halfspace {text!r}: {exc}") from None


def _hs_json(h) -> dict:
    return {"tail": _j(h.tail), "head": _j(h.head), "hyperplane": _j(h.hyperplane), "side": h.side}


# -- subcommands --------------------------------------------------------------------------


def cmd_validate(args, ctx):
    from .core import link_is_flag, validate_median

    cx = _complex(args.file, ctx)
    try:
        rep = validate_median(cx)
    except ValidationError as exc:
        return "fail", {"median": False, "reason": str(exc), "components": _j(exc.components)}
    out = {"vertices": cx.n, "edges": len(cx.edge_index), "median": rep.is_median}
    if not rep.is_median:
        out["counterexample"] = _j(rep.counterexample)
        return "fail", out
    bad = [v for v in cx.vertices if not link_is_flag(cx, v)]
    out["flag"] = not bad
    if bad:
        out["non_flag_vertex"] = _j(bad[0])
        return "fail", out
    return "pass", out


def cmd_hyperplanes(args, ctx):
    from .halfspaces import hyperplanes

    cx = _complex(args.file, ctx)
    try:
        hps = hyperplanes(cx)
    except RepresentationError as exc:
        return "fail", {"reason": str(exc)}
    out = []
    for hp in hps:
        side0 = int(cx.side0[hp.id].sum())
        out.append({"id": hp.id, "edges": [_j(e) for e in hp.edges], "side_sizes": [side0, cx.n - side0]})
    return "pass", {"count": len(out), "hyperplanes": out}


def cmd_relations(args, ctx):
    from .halfspaces import is_strongly_separated, relation_matrix

    cx = _complex(args.file, ctx)
    m = cx.n_hyperplanes
    strong = [[i != j and is_strongly_separated(cx, (i, 0), (j, 0)) for j in range(m)] for i in range(m)]
    return "pass", {"hyperplanes": m, "relation": relation_matrix(cx), "strongly_separated": strong}


def cmd_dual(args, ctx):
    from .core import find_isomorphism, is_graph_isomorphism
    from .formats import load_pocset, save_cubegraph, save_pocset
    from .halfspaces import dual_complex, pocset_of, theta

    text = _read(args.file, ctx["digests"])
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "pocset":
        P = load_pocset(text)
        D = dual_complex(P)
        return "pass", {"pairs": len(P), "dual_vertices": D.n, "dual": save_cubegraph(D)}
    from .formats import load_cubegraph

    cx = load_cubegraph(text, literal_labels=True)
    P = pocset_of(cx)
    D = dual_complex(P)
    via_theta = is_graph_isomorphism(cx, D, lambda v: theta(cx, v))
    iso = find_isomorphism(cx, D) is not None
    ok = via_theta and iso
    return ("pass" if ok else "fail"), {
        "vertices": cx.n, "pocset": save_pocset(P), "dual_vertices": D.n,
        "theta_isomorphism": via_theta, "isomorphic": iso,
    }


def _gen_subset(group, names: str | None):
    if not names:
        return list(group.gens), list(group.names)
    picked = [n for n in names.split(",") if n]
    idx = {n: i for i, n in enumerate(group.names)}
    for n in picked:
        if n not in idx:
            raise InputError(f"unknown generator {n!r}")
    return [group.gens[idx[n]] for n in picked], picked


def cmd_girth(args, ctx):
    from .girth import girth_cayley

    if args.tree:
        from .lazy import FreeProductTree

        T = FreeProductTree(_orders(args.tree))
        radius = args.radius if args.radius is not None else 8
        res = girth_cayley(T, list(T.letters), list(T.letters), radius=radius)
        return "inconclusive", {"group": f"free product {args.tree}", "radius": radius,
                                "lower_bound": res.lower_bound, "notes": list(res.notes)}
    if not args.file:
        raise InputError("girth needs a permgrp FILE or --tree")
    G = _group(args.file, ctx)
    gens, names = _gen_subset(G, args.gens)
    try:
        res = girth_cayley(G, gens, names)
    except GenerationError as exc:
        return "fail", {"reason": str(exc), "subgroup_order": exc.subgroup_order, "order": G.order}
    return "pass", {"order": G.order, "generators": names, "girth": res.girth, "witness": list(res.witness),
                    "notes": list(res.notes)}


def cmd_girth_sup(args, ctx):
    from .girth import girth_sup_bounded

    G = _group(args.file, ctx)
    res = girth_sup_bounded(G, args.max_gens)
    return "pass", {"order": G.order, "max_gens": args.max_gens, "value": res.value, "witness": _j(res.witness),
                    "examined": res.examined, "generating_sets": res.generating, "exact": res.exact}


def cmd_law_check(args, ctx):
    from .girth import check_law, parse_word

    G = _group(args.file, ctx)
    try:
        parse_word(args.word)
    except ValueError as exc:
        raise InputError(f"bad word: {exc}") from None
    policy = args.policy if args.policy in ("auto", "exhaustive") else int(args.policy)
    res = check_law(G, args.word, policy, seed=args.seed)
    out = {"word": args.word, "holds": res.holds, "tested": res.tested, "policy": res.policy}
    if not res.holds:
        out["counterexample"] = _j(res.counterexample)
        return "fail", out
    return "pass", out


def cmd_flip_search(args, ctx):
    from .actions import find_flipper

    act = _action(args, ctx)
    h = _halfspace(act.space, args.halfspace)
    w = find_flipper(act, h, args.max_word_len, args.radius)
    out = {"halfspace": _hs_json(h), "max_word_len": args.max_word_len, "radius": args.radius}
    if w is None:
        out["word"] = None
        return "inconclusive", out
    img = act.translate(w, h)
    out.update({"word": w, "transcript": [[f"{w}.h", "<", "h*", _j(img.star().head)]], "image": _hs_json(img)})
    return "pass", out


def cmd_skewer_search(args, ctx):
    from .actions import double_skewers, find_simultaneous_skewerer

    act = _action(args, ctx)
    h1, h2 = _halfspace(act.space, args.h1), _halfspace(act.space, args.h2)
    try:
        w = find_simultaneous_skewerer(act, [(h1, h2)], args.max_word_len, args.radius)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"h1": _hs_json(h1), "h2": _hs_json(h2), "max_word_len": args.max_word_len, "radius": args.radius}
    if w is None:
        out["word"] = None
        return "inconclusive", out
    cert = double_skewers(act, w, h1, h2, strong=args.strong, radius=args.radius)
    if cert is None:
        out.update({"word": w, "strong": False, "reason": "pair is not strongly separated"})
        return "fail", out
    out.update({"word": w, "strong": cert.strong, "separator": _j(cert.separator), "factor": cert.factor,
                "transcript": _j(cert.transcript), "radius_consumed": cert.radius})
    return "pass", out


def cmd_amplify(args, ctx):
    from .amplify import amplify_facing, verify_family

    act = _action(args, ctx)
    triple = [_halfspace(act.space, t) for t in args.triple]
    try:
        fam = amplify_facing(act, triple, args.n, args.max_word_len, args.radius)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = verify_family(act.space, fam, args.radius)
    out = {"n": args.n, "family": _j(fam.to_json()), "verify": _j(rep.to_json())}
    if not fam.complete:
        return "inconclusive", out
    return ("pass" if rep.ok else "fail"), out


def _cert_action(args, ctx):
    from .pingpong import action_from_spec

    if args.spec:
        try:
            spec = json.loads(_read(args.spec, ctx["digests"]))
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    elif args.tree:
        spec = {"kind": "tree", "orders": _orders(args.tree)}
    else:
        raise InputError("give --tree ORDERS or --spec FILE")
    try:
        return spec, action_from_spec(spec)
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad action spec: {exc}") from None


def _yhs(act, items):
    from .pingpong import YHalfspace, factor_spaces

    out = []
    spaces = factor_spaces(act)
    for it in items:
        i, rest = (it.split("@", 1) if "@" in it else ("0", it))
        try:
            sp = spaces[int(i)]
        except (ValueError, IndexError):
            raise InputError(f"bad factor in {it!r}") from None
        out.append(YHalfspace(int(i), _halfspace(sp, rest)))
    return out


def cmd_girth_cert(args, ctx):
    from .pingpong import build_cert_from_poles, cert_from_json, cert_to_json, check_girth_cert

    if args.mode == "build":
        spec, act = _cert_action(args, ctx)
        gens = [g for g in args.gens.split(",") if g]
        try:
            cert = build_cert_from_poles(
                act, args.sigma, args.tau, gens, (_yhs(act, args.h_sigma), _yhs(act, args.h_tau)),
                m=args.m, N_max=args.N_max, M_max=args.M_max, radius=args.radius,
            )
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if cert is None:
            return "fail", {"cert": None, "reason": "no certificate within the search bounds"}
        v = check_girth_cert(cert, act, args.K, args.radius)
        return v.status, {"cert": cert_to_json(cert, spec), "verdict": v.to_json()}
    if not args.cert:
        raise InputError("girth-cert check needs --cert FILE")
    cert, act = cert_from_json(_read(args.cert, ctx["digests"]))
    v = check_girth_cert(cert, act, args.K, args.radius)
    return v.status, {"verdict": v.to_json(), "N": cert.N, "M": cert.M}


def cmd_wreath_demo(args, ctx):
    from .constructions import wreath_demo

    if not 1 <= args.n <= 6:
        raise InputError("--n must be between 1 and 6")
    out = wreath_demo(args.n, trials=args.trials, seed=args.seed)
    return ("pass" if out["verdict"] else "fail"), _j(out)


# -- wiring ---------------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubegirth", description="Cube complexes, halfspaces and girth certificates.")
    p.add_argument("--version", action="version", version=f"cubegirth {__version__}")
    p.add_argument("--verify-report", metavar="REPORT", help="re-run the command recorded in REPORT and compare")
    p.add_argument("--json", action="store_true", help="JSON output (the only mode; accepted for compatibility)")
    p.add_argument("-v", "--verbose", action="store_true", help="log to standard error")
    sub = p.add_subparsers(dest="command")

    def add(name, fn: Callable, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--seed", type=int, default=0)
        return sp

    for name, fn, h in (("validate", cmd_validate, "check the median and flag conditions"),
                        ("hyperplanes", cmd_hyperplanes, "list hyperplanes"),
                        ("relations", cmd_relations, "pairwise hyperplane relations"),
                        ("dual", cmd_dual, "pocset and dual complex")):
        sp = add(name, fn, h)
        sp.add_argument("file")

    sp = add("girth", cmd_girth, "girth of a Cayley graph")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--gens", help="comma separated generator names (default: all)")
    sp.add_argument("--tree", help="free product orders, e.g. 0,0 for F2")
    sp.add_argument("--radius", type=int)

    sp = add("girth-sup", cmd_girth_sup, "largest girth over small generating sets")
    sp.add_argument("file")
    sp.add_argument("--max-gens", type=int, default=2)

    sp = add("law-check", cmd_law_check, "test a group law")
    sp.add_argument("file")
    sp.add_argument("--word", required=True)
    sp.add_argument("--policy", default="auto", help="auto, exhaustive or a sample count")

    def action_opts(sp):
        sp.add_argument("--tree", help="free product orders acting on its Cayley tree")
        sp.add_argument("--complex", help="cubegraph file")
        sp.add_argument("--action", help="autperm file acting on --complex")
        sp.add_argument("--radius", type=int)
        sp.add_argument("--max-word-len", type=int, default=6)

    sp = add("flip-search", cmd_flip_search, "find a word flipping a halfspace")
    action_opts(sp)
    sp.add_argument("--halfspace", required=True)

    sp = add("skewer-search", cmd_skewer_search, "find a word double skewering h1 <= h2")
    action_opts(sp)
    sp.add_argument("--h1", required=True)
    sp.add_argument("--h2", required=True)
    sp.add_argument("--strong", action="store_true")

    sp = add("amplify", cmd_amplify, "grow a facing triple into n facing pairs")
    action_opts(sp)
    sp.add_argument("--triple", nargs=3, required=True, metavar="H")
    sp.add_argument("--n", type=int, default=2)

    sp = add("girth-cert", cmd_girth_cert, "build or check an infinite-girth certificate")
    sp.add_argument("mode", choices=["build", "check"])
    sp.add_argument("--tree")
    sp.add_argument("--spec", help="JSON action spec")
    sp.add_argument("--cert", help="ppcert file (check mode)")
    sp.add_argument("--sigma", default="a")
    sp.add_argument("--tau", default="b")
    sp.add_argument("--gens", default="a,b")
    sp.add_argument("--h-sigma", nargs="+", default=[":a"])
    sp.add_argument("--h-tau", nargs="+", default=[":b"])
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--N-max", type=int, default=6)
    sp.add_argument("--M-max", type=int, default=16)
    sp.add_argument("--K", type=int, default=3)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--max-word-len", type=int, default=6)

    sp = add("wreath-demo", cmd_wreath_demo, "the L[I^n] counterexample chain")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--trials", type=int, default=200)
    return p


def _params(args) -> dict:
    skip = {"func", "verify_report", "json", "verbose"}
    return {k: _j(v) for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: list[str]) -> tuple[int, dict]:
    """Parse ``argv`` and produce ``(exit code, report)`` without printing."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 3
        return (0 if code == 0 else 3), {}
    if args.verbose:
        logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    if args.verify_report:
        return _verify(args.verify_report)
    if not args.command:
        parser.print_usage(sys.stderr)
        return 3, {"report_version": REPORT_VERSION, "status": "error", "error": "no subcommand"}
    ctx = {"digests": {}}
    report = {"report_version": REPORT_VERSION, "subcommand": args.command, "argv": list(argv)}
    try:
        status, body = args.func(args, ctx)
    except FormatError as exc:
        status, body = "error", {"error": str(exc), "line": exc.line, "column": exc.column}
    except (InputError, ValidationError, RepresentationError) as exc:
        status, body = "error", {"error": str(exc)}
    except InconclusiveError as exc:
        status, body = "inconclusive", {"reason": str(exc), "radius": exc.radius}
    except CubeGirthError as exc:
        status, body = "fail", {"error": str(exc)}
    report["inputs"] = {"files": dict(sorted(ctx["digests"].items())), "params": _params(args),
                        "threads": os.environ.get("CUBEGIRTH_THREADS", "1")}
    report["status"] = status
    report.update(body)
    log.info("%s finished with %s", args.command, status)
    return EXIT[status], report


def _verify(path: str) -> tuple[int, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            old = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return 3, {"report_version": REPORT_VERSION, "status": "error", "error": f"cannot read report: {exc}"}
    argv = old.get("argv")
    if not isinstance(argv, list):
        return 3, {"report_version": REPORT_VERSION, "status": "error", "error": "report has no argv"}
    code, new = run(argv)
    same = _dumps(new) == _dumps(old)
    rep = {"report_version": REPORT_VERSION, "subcommand": "verify-report", "replayed": argv,
           "status": "pass" if same else "fail", "identical": same}
    if not same:
        diff = sorted(k for k in set(old) | set(new) if old.get(k) != new.get(k))
        rep["differing_keys"] = diff
    return (0 if same else 1), rep


def _dumps(rep: dict) -> str:
    return json.dumps(rep, sort_keys=True, indent=2)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report = run(argv)
    if report:
        sys.stdout.write(_dumps(report) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
