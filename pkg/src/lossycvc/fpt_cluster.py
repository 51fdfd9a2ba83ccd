"""Branch-and-reduce solver for a cluster deletion set (and its degree-1 special case).

Per guess ``S'`` of the solution's trace on ``S``, the search state keeps the
partial solution ``X``, the undecided vertices ``U`` of the cluster part ``H``
and a subset ``Z`` of ``X``.  Everything outside ``X`` and ``U`` has been
deleted.  Rules are applied in a fixed priority order; once ``U`` is
independent the leaf is finished with a Steiner call that links the
components of ``G[X]`` through ``U``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable

from .graph import (
    Graph,
    Instance,
    KindMismatch,
    check_instance,
    components,
    count_components,
    is_connected_vertex_cover,
    is_independent,
)
from .fpt_split import subsets_by_size
from .stats import SearchStats, solution_key
from .steiner import SteinerWork, connect_terminals


@dataclass(frozen=True)
class ClusterState:
    g: Graph
    x: frozenset[int]
    z: frozenset[int]
    u: frozenset[int]  # undecided vertices of H; H currently spans u | z
    ell: int  # remaining budget
    sprime: frozenset[int]
    f: frozenset[int]
    depth: int = 0
    f_applied: bool = False

    @property
    def h_vertices(self) -> frozenset[int]:
        return self.u | self.z

    def h_components(self) -> list[frozenset[int]]:
        return components(self.g, self.h_vertices)

    @property
    def cliques(self) -> list[frozenset[int]]:
        """Components of ``H`` with an undecided vertex and at least two members."""
        return [c for c in self.h_components() if len(c) >= 2 and c & self.u]

    @property
    def i_set(self) -> frozenset[int]:
        return frozenset(v for c in self.h_components() if len(c) == 1 for v in c if v in self.u)

    def x_components(self) -> dict[int, int]:
        """Component index in ``G[X]`` for every vertex of ``X``."""
        out = {}
        for i, c in enumerate(components(self.g, self.x)):
            for v in c:
                out[v] = i
        return out

    def comp_neighborhood(self, v: int, owner: dict[int, int] | None = None) -> frozenset[int]:
        owner = self.x_components() if owner is None else owner
        return frozenset(owner[w] for w in self.g.neighbors(v) if w in owner)


def _normalize_z(g: Graph, x: frozenset[int], z: frozenset[int]) -> frozenset[int]:
    """Largest subset of ``z`` none of whose vertices sees ``X`` outside it."""
    z = set(z)
    changed = True
    while changed:
        changed = False
        for v in sorted(z):
            if g.neighbors(v) & (x - z):
                z.discard(v)
                changed = True
    return frozenset(z)


def _add(st: ClusterState, vs, **kw) -> ClusterState:
    vs = frozenset(vs)
    x = st.x | vs
    return replace(st, x=x, u=st.u - vs, z=_normalize_z(st.g, x, st.z), ell=st.ell - len(vs - st.x), **kw)


def init_guess(inst: Instance, sprime, ell: int) -> ClusterState | None:
    sprime = frozenset(sprime)
    s = inst.modulator
    if not sprime <= s:
        raise ValueError("S' must be a subset of S")
    g = inst.graph
    dropped = s - sprime
    if not is_independent(g, dropped):
        return None
    h = inst.rest()
    f = g.neighborhood(dropped) & h
    return ClusterState(g=g, x=sprime, z=frozenset(), u=h, ell=ell - len(sprime), sprime=sprime, f=f)


def preprocess_check(st: ClusterState) -> bool:
    x = st.x
    for q in st.cliques:
        if not (st.g.neighborhood(q) & x):
            return False
    for v in st.f & st.i_set:
        if not (st.g.neighbors(v) & x):
            return False
    return True


def _lower_bound(st: ClusterState) -> int:
    return sum(len(q & st.u) - 1 for q in st.cliques)


def apply_reductions(
    st: ClusterState,
    stats: SearchStats | None = None,
    trace: Callable[[str, ClusterState, ClusterState], None] | None = None,
) -> ClusterState | None:
    """Apply the reduction rules to a fixed point; ``None`` when the budget runs out."""
    while st.ell >= 0:
        nxt, rule = _reduce_once(st)
        if nxt is None:
            return st
        if stats is not None:
            stats.bump(rule)
        if trace is not None:
            trace(rule, st, nxt)
        st = nxt
    return None


def _reduce_once(st: ClusterState) -> tuple[ClusterState | None, str]:
    g = st.g
    if not st.f_applied:
        f = st.f
        y = frozenset(v for v in f if g.neighbors(v) & st.x)
        x = st.x | f
        z = _normalize_z(g, x, f - y)
        return replace(st, x=x, z=z, u=st.u - f, ell=st.ell - len(f - st.x), f_applied=True), "R1"
    cliques = st.cliques
    for q in cliques:
        free = q & st.u
        if len(free) == 1 and q & st.z:
            return _add(st, free), "R2"
    owner = st.x_components()
    for q in cliques:
        free = sorted(q & st.u)
        nb = {v: st.comp_neighborhood(v, owner) for v in free}
        for u in free:
            for v in free:
                if v == u:
                    continue
                if nb[u] < nb[v] or (nb[u] == nb[v] and u > v):
                    keep = q & st.u - {u}
                    nxt = _add(st, keep)
                    return replace(nxt, u=nxt.u - {u}), "R3"
    if any(len(q & st.u) >= 3 for q in cliques):
        return None, ""
    for q in cliques:
        a, b = sorted(q & st.u)
        for u, v in ((a, b), (b, a)):
            if len(st.comp_neighborhood(u, owner)) == 1 <= len(st.comp_neighborhood(v, owner)):
                return _add(st, {v}), "R5"
    return None, ""


def branch_triangle(st: ClusterState) -> list[ClusterState]:
    for q in st.cliques:
        free = sorted(q & st.u)
        if len(free) >= 3:
            u, v, w = free[:3]
            return [replace(_add(st, pair), depth=st.depth + 1) for pair in ((u, v), (u, w), (v, w))]
    return []


def branch_edge(st: ClusterState) -> list[ClusterState]:
    for q in st.cliques:
        free = sorted(q & st.u)
        if len(free) == 2:
            return [replace(_add(st, {v}), depth=st.depth + 1) for v in free]
    return []


def finish_leaf(
    st: ClusterState,
    stats: SearchStats | None = None,
    work: SteinerWork | None = None,
) -> frozenset[int] | None:
    """Connect the components of ``G[X]`` through undecided vertices; budget-checked."""
    g = st.g
    comps = components(g, st.x)
    if stats is not None:
        stats.leaves += 1
    if len(comps) <= 1:
        return st.x if st.ell >= 0 else None
    owner = {}
    for i, c in enumerate(comps):
        for v in c:
            owner[v] = i
    connectors = sorted(st.u)
    local = {v: len(comps) + j for j, v in enumerate(connectors)}
    edges = set()
    for v in connectors:
        for w in g.neighbors(v):
            if w in owner:
                edges.add((owner[w], local[v]))
            elif w in local:
                edges.add(tuple(sorted((local[w], local[v]))))
    h = Graph(len(comps) + len(connectors), sorted(edges))
    if stats is not None:
        stats.steiner_calls += 1
        stats.steiner_terminal_counts.append(len(comps))
    chosen = connect_terminals(h, range(len(comps)), range(len(comps), h.n), work)
    if chosen is None:
        return None
    extra = frozenset(connectors[v - len(comps)] for v in chosen if v >= len(comps))
    if len(extra) > st.ell:
        return None
    return st.x | extra


def _solve_inside_h(g: Graph, h: frozenset[int]) -> frozenset[int] | None:
    """Best cover avoiding the modulator entirely: it must sit inside one component of ``H``."""
    if g.m == 0:
        return frozenset()
    best = None
    for q in components(g, h):
        for cand in [q] + [q - {x} for x in sorted(q)]:
            if is_connected_vertex_cover(g, cand):
                if best is None or solution_key(cand) < solution_key(best):
                    best = cand
    return best


def _check_cluster(inst: Instance, kind: str) -> None:
    if inst.kind in ("cluster", "degree1"):
        check_instance(inst)
    else:
        from .graph import in_class

        h, _ = inst.graph.induced(sorted(inst.rest()))
        if not in_class(h, kind):
            raise KindMismatch(f"G - S is not {kind}")


def solve_cluster(
    inst: Instance,
    ell: int | None = None,
    prune: bool = True,
    trace: Callable[[str, ClusterState, ClusterState], None] | None = None,
    _forbid: str | None = None,
) -> tuple[frozenset[int] | None, SearchStats]:
    """Minimum connected vertex cover of size at most ``ell`` given a cluster deletion set.

    ``prune`` switches on the clique lower bound and best-so-far budget
    tightening; with it off the search tree is exactly the rule-driven one.
    """
    start = time.perf_counter()
    _check_cluster(inst, "cluster")
    g = inst.graph
    stats = SearchStats()
    if g.n and count_components(g) > 1:
        stats.elapsed = time.perf_counter() - start
        return None, stats
    budget = g.n if ell is None else ell
    best = _solve_inside_h(g, inst.rest())
    if best is not None and len(best) > budget:
        best = None
    work = SteinerWork()

    for sprime in subsets_by_size(inst.modulator):
        if not sprime:
            continue
        stats.guesses_enumerated += 1
        st = init_guess(inst, sprime, budget)
        if st is None or st.ell < 0:
            continue
        if not preprocess_check(st):
            continue
        stats.guesses_surviving += 1
        log: list[tuple[int, int]] = []
        stack = [st]
        while stack:
            cur = stack.pop()
            cur = apply_reductions(cur, stats, trace)
            if cur is None:
                continue
            if prune:
                lb = _lower_bound(cur)
                if lb > cur.ell or (best is not None and len(cur.x) + lb > len(best)):
                    continue
            stats.branch_nodes += 1
            children = branch_triangle(cur)
            rule = "R4"
            if not children:
                children = branch_edge(cur)
                rule = "R6"
            if children:
                assert rule != _forbid, f"branching rule {rule} fired"
                stats.bump(rule)
                stack.extend(reversed([c for c in children if c.ell >= 0]))
                continue
            before = stats.leaves
            sol = finish_leaf(cur, stats, work)
            if stats.leaves > before:
                log.append((cur.depth, count_components(g, cur.x)))
            if sol is not None:
                assert is_connected_vertex_cover(g, sol)
                if best is None or solution_key(sol) < solution_key(best):
                    best = sol
        stats.leaf_log[sprime] = log
    stats.steiner_work = work.units
    stats.elapsed = time.perf_counter() - start
    if best is None or len(best) > budget:
        return None, stats
    return best, stats


def solve_degree1(
    inst: Instance,
    ell: int | None = None,
    prune: bool = True,
    trace: Callable[[str, ClusterState, ClusterState], None] | None = None,
) -> tuple[frozenset[int] | None, SearchStats]:
    """Same search for a degree-1 modulator; triangle branching can never fire here."""
    _check_cluster(inst, "degree1")
    return solve_cluster(replace(inst, kind="degree1"), ell, prune, trace, _forbid="R4")


def residual_optimum(st: ClusterState) -> int | None:
    """Brute force: fewest vertices in a connected vertex cover ``T`` with ``X <= T <= X | U``."""
    from itertools import combinations

    g = st.g
    free = sorted(st.u)
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            if is_connected_vertex_cover(g, st.x | set(extra)):
                return len(st.x) + r
    return None
