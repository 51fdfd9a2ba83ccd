"""Command-line entry point: ``lossycvc {solve,kernelize,lift,verify,gen,bench}``.

Vertex ids in every file and in JSON output are 1-indexed, matching DIMACS.
Exit codes: 0 success, 1 input error (including ``kind_mismatch``),
2 infeasible (``solve``) or invariant violation (``verify``/``bench``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .checks import (
    BENCH_SUITES,
    VERIFY_MODES,
    random_cluster_instance,
    random_connected_graph,
    random_split_instance,
)
from .gadgets import build_w1_gadget
from .graph import (
    Graph,
    GraphFormatError,
    Instance,
    KindMismatch,
    format_cover,
    format_dimacs,
    format_vertex_list,
    is_clique_cover,
    is_connected_vertex_cover,
    parse_cover,
    parse_dimacs,
    parse_vertex_list,
)
from .lossy import ChainMismatch, LiftChain, lift
from .modulators import find_clique_cover, find_modulator
from .solvers import KERNEL_PARAMS, PARAMS, kernelize, make_instance, solve

SCHEMA = 1
log = logging.getLogger("lossycvc")


class InputError(Exception):
    pass


def _emit(doc: dict, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps({"schema": SCHEMA, **doc}, sort_keys=True) + "\n")


def _one_based(vs) -> list[int]:
    return [v + 1 for v in sorted(vs)]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _load_instance(args) -> tuple[Instance, bool | None]:
    """Build and validate the instance; the flag says whether a computed cover is exact."""
    g = parse_dimacs(_read(args.graph))
    param = args.param
    if param == "cliquecover":
        s = frozenset()
        if args.modulator:
            raise InputError("the cliquecover parameter takes no modulator (use modcc)")
    elif args.modulator:
        s = parse_vertex_list(_read(args.modulator), g.n)
    elif args.find_modulator is not None:
        kind = "split" if param == "modcc" else PARAMS[param]
        found = find_modulator(g, kind, args.find_modulator)
        if found is None:
            raise InputError(f"no {kind} modulator of size <= {args.find_modulator}")
        s = found
    else:
        raise InputError(f"--param {param} needs --modulator or --find-modulator")
    cover, exact = None, None
    if PARAMS[param] == "cliquecover":
        rest = [v for v in range(g.n) if v not in s]
        if args.cover:
            cover = parse_cover(_read(args.cover), g.n)
        else:
            h, old = g.induced(rest)
            found_cover = find_clique_cover(h, max(h.n, 1))
            cover = tuple(frozenset(old[v] for v in p) for p in found_cover.parts)
            exact = found_cover.exact
    return make_instance(g, s, param, cover), exact


def _add_instance_args(p: argparse.ArgumentParser, params) -> None:
    p.add_argument("--param", required=True, choices=params)
    p.add_argument("--graph", required=True, help="DIMACS graph file")
    p.add_argument("--modulator", help="modulator file (1-indexed ids)")
    p.add_argument("--cover", help="clique cover of G - S, one clique per line")
    p.add_argument("--find-modulator", type=int, metavar="KMAX", help="search for a modulator of size <= KMAX")


# ---------------------------------------------------------------- subcommands


def cmd_solve(args) -> int:
    inst, exact = _load_instance(args)
    sol, stats = solve(inst, args.ell)
    if sol is not None and not is_connected_vertex_cover(inst.graph, sol):
        raise AssertionError("solver returned a set that is not a connected vertex cover")
    doc = {
        "feasible": sol is not None,
        "size": None if sol is None else len(sol),
        "vertices": [] if sol is None else _one_based(sol),
        "stats": stats.summary(),
        "param_kind": args.param,
        "modulator_size": len(inst.modulator),
    }
    if exact is not None:
        doc["cover_exact"] = exact
    _emit(doc)
    return 0 if sol is not None else 2


def cmd_kernelize(args) -> int:
    inst, _ = _load_instance(args)
    try:
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"alpha must be a rational number, got {args.alpha!r}") from None
    if alpha <= 1:
        raise InputError("alpha must exceed 1")
    try:
        reduced, chain, cert = kernelize(inst, alpha, args.param)
    except ValueError as exc:
        if isinstance(exc, KindMismatch):
            raise
        raise InputError(str(exc)) from None
    _write(args.out_graph, format_dimacs(reduced.graph, f"kernel of {Path(args.graph).name}, alpha={alpha}"))
    _write(args.out_chain, chain.to_json())
    if args.out_modulator:
        _write(args.out_modulator, format_vertex_list(reduced.modulator))
    if args.out_cover and reduced.cover is not None:
        _write(args.out_cover, format_cover(reduced.cover))
    _emit(
        {
            "alpha": str(alpha),
            "param_kind": args.param,
            "vertices_before": inst.graph.n,
            "vertices_after": reduced.graph.n,
            "modulator_after": _one_based(reduced.modulator),
            "steps": [s.rule for s in chain.steps],
            "certificate": cert.as_dict(),
        }
    )
    return 0


def cmd_lift(args) -> int:
    try:
        chain = LiftChain.from_json(_read(args.chain))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed chain: {exc}") from None
    sol = parse_vertex_list(_read(args.solution), chain.target.graph.n)
    reduced_ok = is_connected_vertex_cover(chain.target.graph, sol)
    try:
        lifted = lift(chain, sol)
    except ChainMismatch as exc:
        raise InputError(str(exc)) from None
    feasible = is_connected_vertex_cover(chain.source.graph, lifted)
    if args.out:
        _write(args.out, format_vertex_list(lifted))
    _emit(
        {
            "reduced_size": len(sol),
            "reduced_feasible": reduced_ok,
            "size": len(lifted),
            "vertices": _one_based(lifted),
            "feasible": feasible,
        }
    )
    return 0 if feasible else 2


def cmd_verify(args) -> int:
    fn = VERIFY_MODES[args.mode]

    def say(line: str) -> None:
        if not args.quiet:
            print(line)

    kwargs = {}
    if args.mode == "gadget":
        kwargs = {"trials": args.trials, "seed": args.seed}
    log.info("verify mode=%s nmax=%s seed=%s", args.mode, args.nmax, args.seed)
    bad = fn(args.nmax, say, **kwargs)
    for line in bad:
        print(f"VIOLATION {line}")
    print(f"{args.mode}: {'ok' if not bad else f'{len(bad)} violation(s)'}")
    return 0 if not bad else 2


def _gen_graph(args, rng: random.Random):
    if args.model == "gnp":
        if args.connected:
            return Instance(random_connected_graph(rng, args.n, args.p)), None
        from itertools import combinations

        return Instance(Graph(args.n, [e for e in combinations(range(args.n), 2) if rng.random() < args.p])), None
    if args.model == "split":
        return random_split_instance(rng, args.k, args.clique, args.indep, args.p), None
    if args.model in ("cluster", "degree1"):
        cap = 2 if args.model == "degree1" else args.max_clique
        sizes = [rng.randint(1, cap) for _ in range(args.parts)]
        return random_cluster_instance(rng, args.k, sizes, args.p, args.model), None
    if args.model == "gadget":
        base = parse_dimacs(_read(args.source)) if args.source else random_connected_graph(rng, args.n, args.p)
        gadget = build_w1_gadget(base, args.k)
        if not is_clique_cover(gadget.g_prime, gadget.cover):
            raise AssertionError("gadget cover failed validation")
        return gadget.instance(), gadget.cover
    raise InputError(f"unknown model {args.model}")


def cmd_gen(args) -> int:
    if args.n is not None and args.n < 0 or not 0 <= args.p <= 1 or args.k < 0:
        raise InputError("n and k must be non-negative and p must lie in [0, 1]")
    rng = random.Random(args.seed)
    inst, cover = _gen_graph(args, rng)
    _write(args.out, format_dimacs(inst.graph, f"model={args.model} seed={args.seed}"))
    if args.out_modulator:
        _write(args.out_modulator, format_vertex_list(inst.modulator))
    if args.out_cover and cover is not None:
        _write(args.out_cover, format_cover(cover))
    _emit(
        {
            "model": args.model,
            "seed": args.seed,
            "n": inst.graph.n,
            "m": inst.graph.m,
            "modulator": _one_based(inst.modulator),
            "cover_size": None if cover is None else len(cover),
        }
    )
    return 0


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    log.info("bench suite=%s seed=%s", args.suite, args.seed)
    rows = BENCH_SUITES[args.suite](rng, reps=args.reps)
    fields: list[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        _write(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    failed = [r for r in rows if not r["ok"]]
    if failed:
        print(f"{len(failed)} of {len(rows)} rows exceed their bound", file=sys.stderr)
    return 0 if not failed else 2


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lossycvc", description="Connected vertex cover toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact minimum connected vertex cover")
    _add_instance_args(p, sorted(PARAMS))
    p.add_argument("--ell", type=int, help="size budget")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="approximate kernel plus lift chain")
    _add_instance_args(p, KERNEL_PARAMS)
    p.add_argument("--alpha", required=True, help="approximation factor, e.g. 2 or 3/2")
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-chain", required=True)
    p.add_argument("--out-modulator")
    p.add_argument("--out-cover")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("lift", help="map a reduced solution back through a chain")
    p.add_argument("--chain", required=True)
    p.add_argument("--solution", required=True, help="vertex list of the reduced graph (1-indexed)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--mode", required=True, choices=sorted(VERIFY_MODES))
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--model", required=True, choices=["gnp", "split", "cluster", "degree1", "gadget"])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--k", type=int, default=2, help="modulator size, or gadget solution size")
    p.add_argument("--clique", type=int, default=4)
    p.add_argument("--indep", type=int, default=6)
    p.add_argument("--parts", type=int, default=4)
    p.add_argument("--max-clique", type=int, default=4)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--source", help="base graph for the gadget model")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--out-modulator")
    p.add_argument("--out-cover")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="branching and kernel-size measurements as CSV")
    p.add_argument("--suite", required=True, choices=sorted(BENCH_SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except KindMismatch as exc:
        _emit({"error": "kind_mismatch", "message": str(exc)})
        return 1
    except (InputError, GraphFormatError) as exc:
        _emit({"error": "input_error", "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
