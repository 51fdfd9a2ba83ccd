"""Exact solvers guessing the solution's trace on a modulator plus a clique part.

Covers three parameterizations:

* split deletion set (finishing each guess with a bipartite Steiner call),
* clique deletion set (no Steiner phase at all),
* modulator plus a clique cover of the rest (XP in the number of cliques).
"""

from __future__ import annotations

import time
from itertools import combinations
from typing import Iterable, Iterator

from .graph import (
    Graph,
    Instance,
    KindMismatch,
    SplitPartition,
    check_instance,
    components,
    count_components,
    is_clique,
    is_connected_set,
    is_connected_vertex_cover,
    is_independent,
    is_vertex_cover,
    split_partition,
)
from .stats import SearchStats, solution_key
from .steiner import SteinerWork, connect_terminals, work_bound


def subsets_by_size(items: Iterable[int]) -> Iterator[frozenset[int]]:
    """All subsets, by increasing size and lexicographically within a size."""
    items = sorted(items)
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def terminal_sum_bound(g: Graph, s: Iterable[int]) -> int:
    """``2 * 3**d * 2**(|S|-d)`` with ``d`` the number of components of ``G[S]``."""
    s = list(s)
    d = count_components(g, s)
    return 2 * 3**d * 2 ** (len(s) - d)


def _graph_is_connected(g: Graph) -> bool:
    return g.n == 0 or count_components(g) == 1


def _partition_for(inst: Instance, partition: SplitPartition | None) -> SplitPartition:
    rest = sorted(inst.rest())
    if partition is None:
        h, old_of_new = inst.graph.induced(rest)
        found = split_partition(h)
        if found is None:
            raise KindMismatch("G - S is not split")
        return SplitPartition(
            frozenset(old_of_new[v] for v in found.clique),
            frozenset(old_of_new[v] for v in found.independent),
        )
    g = inst.graph
    if partition.clique | partition.independent != frozenset(rest) or partition.clique & partition.independent:
        raise KindMismatch("split partition does not partition G - S")
    if not (is_clique(g, partition.clique) and is_independent(g, partition.independent)):
        raise KindMismatch("split partition is not a clique plus an independent set")
    return partition


def _clique_side_choices(clique: frozenset[int]) -> list[frozenset[int]]:
    return [clique] + [clique - {x} for x in sorted(clique)]


def solve_split(
    inst: Instance,
    partition: SplitPartition | None = None,
    ell: int | None = None,
) -> tuple[frozenset[int] | None, SearchStats]:
    """Minimum connected vertex cover of size at most ``ell`` given a split deletion set.

    Raises :class:`KindMismatch` when ``G - S`` is not split (or the given
    partition is not a witness).  A disconnected graph yields ``None``.
    """
    start = time.perf_counter()
    stats = SearchStats()
    if inst.kind == "split":
        check_instance(inst)
    g = inst.graph
    s = inst.modulator
    part = _partition_for(inst, partition)
    c_side, i_side = part.clique, part.independent
    if not _graph_is_connected(g):
        stats.elapsed = time.perf_counter() - start
        return None, stats

    best = None
    work = SteinerWork()
    s_graph, s_old = g.induced(sorted(s))
    s_local = {v: i for i, v in enumerate(s_old)}
    for y in _clique_side_choices(c_side):
        excluded_c = c_side - y
        sum_key = tuple(sorted(excluded_c))
        stats.terminal_sums.setdefault(sum_key, 0)
        for z in subsets_by_size(s):
            stats.guesses_enumerated += 1
            excluded = excluded_c | (s - z)
            z_covers = is_vertex_cover(s_graph, [s_local[v] for v in z])
            if not is_independent(g, excluded):
                assert excluded_c or not z_covers
                continue
            assert z_covers
            stats.guesses_surviving += 1
            t = y | z
            r = g.neighborhood(excluded) - t
            assert r <= i_side
            if not t:
                # nothing guessed on C or S; the cover lives entirely in I
                if len(r) <= 1 and is_connected_vertex_cover(g, r):
                    best = _better(best, r)
                continue
            if any(not (g.neighbors(v) & t) for v in r):
                continue
            before = count_components(g, t)
            tr = t | r
            comps = components(g, tr)
            assert len(comps) <= before
            assert len(comps) <= count_components(g, z) + 1
            if len(comps) == 1:
                cand = frozenset(tr)
            else:
                cand = _steiner_finish(g, comps, i_side - r, stats, work)
                stats.terminal_sums[sum_key] += 2 ** len(comps)
                if cand is None:
                    continue
            assert is_connected_vertex_cover(g, cand)
            best = _better(best, cand)
    stats.steiner_work = work.units
    stats.elapsed = time.perf_counter() - start
    if best is None or (ell is not None and len(best) > ell):
        return None, stats
    return best, stats


def _better(best, cand):
    if best is None or solution_key(cand) < solution_key(best):
        return frozenset(cand)
    return best


def _steiner_finish(
    g: Graph,
    comps: list[frozenset[int]],
    connectors: Iterable[int],
    stats: SearchStats,
    work: SteinerWork,
) -> frozenset[int] | None:
    """Contract each component to a terminal and connect them through ``connectors``."""
    connectors = sorted(connectors)
    c = len(comps)
    owner = {}
    for i, comp in enumerate(comps):
        for v in comp:
            owner[v] = i
    local = {v: c + j for j, v in enumerate(connectors)}
    edges = set()
    for v in connectors:
        for u in g.neighbors(v):
            if u in owner:
                edges.add((owner[u], local[v]))
            elif u in local:
                a, b = sorted((local[u], local[v]))
                edges.add((a, b))
    h = Graph(c + len(connectors), sorted(edges))
    stats.steiner_calls += 1
    stats.steiner_terminal_counts.append(c)
    before = work.units
    chosen = connect_terminals(h, range(c), range(c, h.n), work)
    assert work.units - before <= work_bound(c, h.n)
    if chosen is None:
        return None
    out = set().union(*comps)
    out.update(connectors[v - c] for v in chosen if v >= c)
    return frozenset(out)


def solve_clique_deletion(
    inst: Instance, ell: int | None = None
) -> tuple[frozenset[int] | None, SearchStats]:
    """Guess ``X* ∩ S`` and the at most one excluded clique vertex; no Steiner phase."""
    start = time.perf_counter()
    stats = SearchStats()
    if inst.kind == "clique":
        check_instance(inst)
    g = inst.graph
    s = inst.modulator
    clique = inst.rest()
    if not is_clique(g, clique):
        raise KindMismatch("G - S is not a clique")
    if not _graph_is_connected(g):
        stats.elapsed = time.perf_counter() - start
        return None, stats
    best = None
    for y in _clique_side_choices(clique):
        for z in subsets_by_size(s):
            stats.guesses_enumerated += 1
            excluded = (clique - y) | (s - z)
            if not is_independent(g, excluded):
                continue
            stats.guesses_surviving += 1
            t = y | z
            assert not (g.neighborhood(excluded) - t)
            if is_connected_set(g, t):
                best = _better(best, t)
    assert stats.steiner_calls == 0
    stats.elapsed = time.perf_counter() - start
    if best is None or (ell is not None and len(best) > ell):
        return None, stats
    return best, stats


def solve_mod_clique_cover(
    inst: Instance,
    ell: int | None = None,
    stats: SearchStats | None = None,
) -> frozenset[int] | None:
    """Guess ``X* ∩ S`` and one optional excluded vertex per clique of the cover."""
    start = time.perf_counter()
    stats = stats if stats is not None else SearchStats()
    check_instance(inst)
    g = inst.graph
    s = inst.modulator
    cliques = [sorted(q) for q in (inst.cover or ())]
    if not _graph_is_connected(g):
        stats.elapsed = time.perf_counter() - start
        return None
    best = None
    everything = frozenset(range(g.n))
    adj = g.adjacency
    for z in subsets_by_size(s):
        base = s - z
        if not is_independent(g, base):
            stats.guesses_enumerated += 1
            continue
        blocked = set(g.neighborhood(base))
        # depth-first product over cliques, pruning choices adjacent to earlier exclusions
        for pick in _exclusions(cliques, blocked, adj):
            stats.guesses_enumerated += 1
            stats.guesses_surviving += 1
            t = everything - base - pick
            if is_connected_set(g, t):
                best = _better(best, t)
    stats.elapsed = time.perf_counter() - start
    if best is None or (ell is not None and len(best) > ell):
        return None
    return best


def _exclusions(cliques: list[list[int]], blocked: set[int], adj) -> Iterator[frozenset[int]]:
    chosen: list[int] = []

    def rec(i: int, blocked: frozenset[int]):
        if i == len(cliques):
            yield frozenset(chosen)
            return
        yield from rec(i + 1, blocked)
        for x in cliques[i]:
            if x not in blocked:
                chosen.append(x)
                yield from rec(i + 1, blocked | adj[x])
                chosen.pop()

    yield from rec(0, frozenset(blocked))


__all__ = [
    "solve_split",
    "solve_clique_deletion",
    "solve_mod_clique_cover",
    "subsets_by_size",
    "terminal_sum_bound",
]
