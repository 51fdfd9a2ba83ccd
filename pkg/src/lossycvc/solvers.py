"""Name-based dispatch to the exact solvers and the approximate kernels."""

from __future__ import annotations

import time
from dataclasses import replace

from .fpt_chordal import solve_chordal, solve_degree2
from .fpt_cluster import solve_cluster, solve_degree1
from .fpt_split import solve_clique_deletion, solve_mod_clique_cover, solve_split
from .graph import Instance, KindMismatch, check_instance
from .lossy import (
    AlphaParams,
    psaks_clique_cover,
    psaks_clique_deletion,
    psaks_cluster,
    psaks_degree1,
    psaks_mod_clique_cover,
    psaks_split,
)
from .stats import SearchStats

# CLI parameter name -> instance kind
PARAMS = {
    "split": "split",
    "clique": "clique",
    "cluster": "cluster",
    "degree1": "degree1",
    "degree2": "degree2",
    "chordal": "chordal",
    "cliquecover": "cliquecover",
    "modcc": "cliquecover",
}

KERNEL_PARAMS = ("split", "clique", "cluster", "degree1", "cliquecover", "modcc")


def make_instance(graph, modulator=(), param: str = "split", cover=None) -> Instance:
    if param not in PARAMS:
        raise ValueError(f"unknown parameter {param!r}")
    modulator = frozenset(modulator)
    if param == "cliquecover" and modulator:
        raise KindMismatch("the clique-cover parameter takes no modulator")
    parts = None if cover is None else tuple(frozenset(p) for p in cover)
    return check_instance(Instance(graph, modulator, PARAMS[param], parts))


def solve(inst: Instance, ell: int | None = None) -> tuple[frozenset[int] | None, SearchStats]:
    """Run the solver matching ``inst.kind``; always returns a :class:`SearchStats`."""
    kind = inst.kind
    if kind == "split":
        return solve_split(inst, ell=ell)
    if kind == "clique":
        return solve_clique_deletion(inst, ell)
    if kind == "cluster":
        return solve_cluster(inst, ell)
    if kind == "degree1":
        return solve_degree1(inst, ell)
    if kind == "cliquecover":
        stats = SearchStats()
        return solve_mod_clique_cover(inst, ell, stats), stats
    if kind in ("chordal", "degree2"):
        start = time.perf_counter()
        info: dict = {}
        fn = solve_chordal if kind == "chordal" else solve_degree2
        if kind == "degree2":
            check_instance(inst)
        sol = fn(inst, ell, info)
        stats = SearchStats(elapsed=time.perf_counter() - start)
        stats.rule_counts["dp_nodes"] = info.get("nice_nodes", 0)
        return sol, stats
    raise ValueError(f"no solver for kind {kind!r}")


def kernelize(inst: Instance, alpha, param: str | None = None):
    """Dispatch to the approximate kernel for ``param`` (defaults from the instance kind)."""
    params = alpha if isinstance(alpha, AlphaParams) else AlphaParams.of(alpha)
    if param is None:
        param = "modcc" if inst.kind == "cliquecover" and inst.modulator else inst.kind
    if param == "split":
        return psaks_split(inst, params=params)
    if param == "clique":
        return psaks_clique_deletion(inst, params=params)
    if param == "cluster":
        return psaks_cluster(inst, params=params)
    if param == "degree1":
        return psaks_degree1(inst, params=params)
    if param == "cliquecover":
        return psaks_clique_cover(inst, params=params)
    if param == "modcc":
        return psaks_mod_clique_cover(inst, params=params)
    raise ValueError(f"no approximate kernel for {param!r}")


def with_kind(inst: Instance, kind: str) -> Instance:
    return replace(inst, kind=kind)
