"""Command-line interface.

Exit codes: 0 for a cover (or a passing check), 1 for NoWithinBudget (or a failing check),
2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from fractions import Fraction
from typing import Any, Sequence

from . import gadgets
from .formats import (
    ParseError,
    detect_format,
    emit_adoct,
    emit_lgr,
    emit_psi,
    parse_adoct,
    parse_lgr,
    parse_psi,
    parse_vertex_list,
)
from .generators import planted_psi
from .instances import has_odd_labeled_cycle
from .oracles import brute_adoct, brute_cwc, brute_psi
from .perm import LabeledDigraph, is_colorful_walk_cover
from .pipeline import FamilyConfig, RestrictedInstance, solve_cwc_approx, solve_doct_approx, solve_restricted
from .shadow import MODES

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _ids(text: str | None) -> frozenset[int] | None:
    if text is None:
        return None
    return parse_vertex_list(text)


def _report(command: str, verdict: str, cover: frozenset[int] | None, **extra: Any) -> dict[str, Any]:
    rep: dict[str, Any] = {"format_version": FORMAT_VERSION, "command": command, "verdict": verdict}
    rep["cover"] = sorted(cover) if cover is not None else None
    rep["cover_size"] = len(cover) if cover is not None else None
    rep.update(extra)
    return rep


def _render(rep: dict[str, Any], as_json: bool) -> str:
    if as_json:
        return json.dumps(rep, sort_keys=True, indent=2) + "\n"
    lines = []
    for key in sorted(rep):
        val = rep[key]
        if isinstance(val, list):
            val = " ".join(map(str, val))
        elif isinstance(val, dict):
            val = " ".join(f"{k}={v}" for k, v in sorted(val.items()))
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def _plain_digraph(D: LabeledDigraph):
    return D.graph


def cmd_solve(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    D = parse_lgr(_read(args.file))
    if args.command == "solve-doct":
        out = solve_doct_approx(_plain_digraph(D), args.k, args.mode, args.seed, args.repetitions)
    else:
        out = solve_cwc_approx(D, args.k, args.mode, args.seed, args.repetitions, solution=_ids(args.solution))
    rep = _report(
        args.command, out.verdict, out.cover, budget=args.k, mode=args.mode, seed=args.seed, stats=dict(out.stats)
    )
    return rep, 0 if out.cover is not None else 1


def cmd_solve_restricted(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    D = parse_lgr(_read(args.file))
    W = _ids(args.anchor) or frozenset()
    if not is_colorful_walk_cover(D, W):
        raise UsageError("anchor set does not cover the graph")
    config = FamilyConfig(args.mode, args.seed, args.repetitions, _ids(args.solution))
    from collections import Counter

    stats: Counter = Counter()
    sol = solve_restricted(RestrictedInstance(D, args.k, W), config.family(D, W, args.k), stats)
    verdict = "Cover" if sol is not None else "NoWithinBudget"
    rep = _report(args.command, verdict, sol, budget=args.k, mode=args.mode, seed=args.seed, stats=dict(stats))
    return rep, 0 if sol is not None else 1


def cmd_brute(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    text = _read(args.file)
    fmt = detect_format(text)
    if fmt == "adoct":
        inst = parse_adoct(text)
        bound = inst.budget if args.max_weight is None else args.max_weight
        res = brute_adoct(inst, bound)
    elif fmt == "lgr":
        res = brute_cwc(parse_lgr(text), args.max_weight)
    else:
        raise UsageError(f"brute does not handle format {fmt!r}")
    if res is None:
        return _report("brute", "NoWithinBudget", None, max_weight=args.max_weight), 1
    first = min(res.witnesses, key=sorted)
    rep = _report(
        "brute", "Cover", first, min_weight=res.min_weight, witness_count=len(res.witnesses),
        truncated=res.truncated, max_weight=args.max_weight,
    )
    return rep, 0


def _pairs(text: str | None) -> list[tuple[int, int]]:
    if not text:
        return []
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            i, j = chunk.split(",")
            out.append((int(i), int(j)))
    return out


def cmd_gen(args: argparse.Namespace) -> str:
    if args.kind == "clock":
        build = {"forward": gadgets.forward_clock, "reverse": gadgets.reverse_clock, "double": gadgets.double_clock}
        return emit_adoct(build[args.variant](args.n, args.k).instance)
    if args.kind == "sync":
        return emit_adoct(gadgets.synchronizer(args.n, args.k, _pairs(args.pairs)).instance)
    inst, _ = planted_psi(args.gnodes, args.n, random.Random(args.seed))
    return emit_psi(inst)


def cmd_reduce(args: argparse.Namespace) -> str:
    text = _read(args.file)
    if args.kind == "psi-to-adoct":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return emit_adoct(gadgets.psi_to_adoct(parse_psi(text)).instance)
    if args.kind == "adoct-to-doct":
        red = gadgets.adoct_to_doct(parse_adoct(text), Fraction(args.alpha))
        return emit_lgr(_as_plain_lgr(red.digraph))
    D = parse_lgr(text).graph
    if args.kind == "doct-to-arc":
        return emit_lgr(_as_plain_lgr(gadgets.doct_to_arcdoct(D)))
    if args.k is None:
        raise UsageError("arc-to-doct needs --k")
    return emit_lgr(_as_plain_lgr(gadgets.arcdoct_to_doct(D, args.k)))


def _as_plain_lgr(D) -> LabeledDigraph:
    return LabeledDigraph(D.vertex_count, 1, tuple((u, v, (0,)) for u, v in D.arcs))


def cmd_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    text = _read(args.file)
    if args.cover is not None:
        X = _ids(args.cover)
    elif args.cover_file is not None:
        X = parse_vertex_list(_read(args.cover_file))
    else:
        raise UsageError("verify-cover needs --cover or --cover-file")
    fmt = detect_format(text)
    if fmt == "adoct":
        inst = parse_adoct(text)
        if any(not 0 <= v < inst.vertex_count for v in X):
            raise UsageError("cover mentions a vertex outside the instance")
        weight = inst.weight(X)
        ok = weight <= inst.budget and not has_odd_labeled_cycle(inst, X)
        rep = _report("verify-cover", "PASS" if ok else "FAIL", X, weight=weight, budget=inst.budget)
    elif fmt == "lgr":
        D = parse_lgr(text)
        if not X <= D.vertices:
            raise UsageError("cover mentions a vertex outside the instance")
        ok = is_colorful_walk_cover(D, X) and (args.k is None or len(X) <= args.k)
        rep = _report("verify-cover", "PASS" if ok else "FAIL", X, budget=args.k)
    else:
        raise UsageError(f"verify-cover does not handle format {fmt!r}")
    return rep, 0 if ok else 1


def cmd_witness(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    psi = parse_psi(_read(args.file))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        red = gadgets.psi_to_adoct(psi)
    phi = brute_psi(psi)
    if phi is None:
        return _report("witness-direction1", "NoWithinBudget", None), 1
    X = gadgets.colorful_mapping_to_cover(red, phi)
    if args.instance_out:
        with open(args.instance_out, "w", encoding="utf-8") as fh:
            fh.write(emit_adoct(red.instance))
    if args.cover_out:
        with open(args.cover_out, "w", encoding="utf-8") as fh:
            fh.write(" ".join(map(str, sorted(X))) + "\n")
    rep = _report(
        "witness-direction1", "Cover", X, weight=red.instance.weight(X), budget=red.instance.budget,
        mapping={str(g): h for g, h in sorted(phi.items())},
    )
    return rep, 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="doctapprox", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def solver(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", nargs="?", help="instance file, '-' or omitted for stdin")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--mode", choices=MODES, required=True)
        p.add_argument("--seed", type=int)
        p.add_argument("--repetitions", type=int)
        p.add_argument("--solution", help="known solution for oracle mode, e.g. '1,4'")
        p.add_argument("--json", action="store_true")
        return p

    solver("solve-cwc", "approximate colorful walk cover of an .lgr instance")
    solver("solve-doct", "approximate odd cycle transversal of the digraph of an .lgr instance")
    p = solver("solve-restricted", "minimum cover avoiding an anchor set")
    p.add_argument("--anchor", required=True, help="anchor vertices, e.g. '0,3'")

    p = sub.add_parser("brute", help="exhaustive optimum of an .lgr or .adoct instance")
    p.add_argument("file", nargs="?")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="emit a generated instance")
    p.add_argument("kind", choices=("clock", "sync", "psi-random"))
    p.add_argument("--variant", choices=("forward", "reverse", "double"), default="forward")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=100)
    p.add_argument("--pairs", help="synchronizer pairs, e.g. '1,2;3,3'")
    p.add_argument("--gnodes", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("reduce", help="apply a reduction and emit the result")
    p.add_argument("kind", choices=("psi-to-adoct", "adoct-to-doct", "doct-to-arc", "arc-to-doct"))
    p.add_argument("file", nargs="?")
    p.add_argument("--alpha", default="1")
    p.add_argument("--k", type=int)

    p = sub.add_parser("verify-cover", help="check a cover against an instance")
    p.add_argument("file", nargs="?")
    p.add_argument("--cover")
    p.add_argument("--cover-file")
    p.add_argument("--k", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("witness-direction1", help="build the explicit cover from a planted mapping")
    p.add_argument("file", nargs="?")
    p.add_argument("--instance-out")
    p.add_argument("--cover-out")
    p.add_argument("--json", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("gen", "reduce"):
            text = cmd_gen(args) if args.command == "gen" else cmd_reduce(args)
            sys.stdout.write(text)
            return 0
        handler = {
            "solve-cwc": cmd_solve,
            "solve-doct": cmd_solve,
            "solve-restricted": cmd_solve_restricted,
            "brute": cmd_brute,
            "verify-cover": cmd_verify,
            "witness-direction1": cmd_witness,
        }[args.command]
        rep, code = handler(args)
    except (ParseError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(rep, getattr(args, "json", False)))
    return code


if __name__ == "__main__":
    sys.exit(main())
