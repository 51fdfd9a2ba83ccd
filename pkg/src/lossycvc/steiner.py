"""Minimum connected superset of a terminal set (node-weighted Steiner tree).

Dreyfus-Wagner over terminal subsets with trees rooted at vertices:
``best[D][v]`` is the cheapest connected set containing the terminals ``D``
and the vertex ``v``.  Vertex weights are ``2**N - 2**(N-1-i)`` for the
vertex of rank ``i``, which makes the optimum unique and equal to the
lexicographically least minimum-cardinality solution.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, components, is_independent


@dataclass(frozen=True)
class SteinerInstance:
    graph: Graph
    side_p: frozenset[int]
    side_q: frozenset[int]

    def __post_init__(self):
        if self.side_p & self.side_q:
            raise ValueError("sides of a Steiner instance must be disjoint")
        if not (is_independent(self.graph, self.side_p) and is_independent(self.graph, self.side_q)):
            raise ValueError("Steiner instance is not bipartite with the given sides")


@dataclass
class SteinerWork:
    """Instrumentation: DP table entries touched."""

    merges: int = 0
    relaxations: int = 0
    calls: int = 0
    terminal_counts: list[int] = field(default_factory=list)

    @property
    def units(self) -> int:
        return self.merges + self.relaxations


def work_bound(num_terminals: int, num_vertices: int) -> int:
    """Bound on :attr:`SteinerWork.units` for one call: subset splits plus Dijkstra relaxations."""
    n = max(num_vertices, 1)
    return 3**num_terminals * n + 2**num_terminals * n * n


def min_connected_superset(
    inst: SteinerInstance | Graph,
    side_p: Iterable[int] | None = None,
    side_q: Iterable[int] | None = None,
    work: SteinerWork | None = None,
) -> frozenset[int] | None:
    """Minimum ``X`` with ``side_q <= X <= side_p | side_q`` and ``graph[X]`` connected.

    Accepts either a :class:`SteinerInstance` or ``(graph, side_p, side_q)``.
    The DP does not rely on bipartiteness, so callers with a non-bipartite
    connector side may use :func:`connect_terminals` directly.
    """
    if isinstance(inst, SteinerInstance):
        g, p, q = inst.graph, inst.side_p, inst.side_q
    else:
        g, p, q = inst, frozenset(side_p or ()), frozenset(side_q or ())
    return connect_terminals(g, q, p, work)


def connect_terminals(
    g: Graph,
    terminals: Iterable[int],
    connectors: Iterable[int],
    work: SteinerWork | None = None,
) -> frozenset[int] | None:
    terms = sorted(set(terminals))
    allowed = sorted(set(connectors) | set(terms))
    if work is not None:
        work.calls += 1
        work.terminal_counts.append(len(terms))
    if len(terms) <= 1:
        return frozenset(terms)
    comp_of = {}
    for i, c in enumerate(components(g, allowed)):
        for v in c:
            comp_of[v] = i
    if len({comp_of[t] for t in terms}) > 1:
        return None

    idx = {v: i for i, v in enumerate(allowed)}
    n = len(allowed)
    nbrs = [[idx[u] for u in g.neighbors(v) if u in idx] for v in allowed]
    big = 1 << n
    weight = [big - (1 << (n - 1 - i)) for i in range(n)]
    q = len(terms)
    full = (1 << q) - 1
    inf = float("inf")
    best = [[inf] * n for _ in range(full + 1)]
    back: list[list[tuple | None]] = [[None] * n for _ in range(full + 1)]
    merges = relax = 0

    for mask in range(1, full + 1):
        row = best[mask]
        brow = back[mask]
        if mask & (mask - 1) == 0:
            t = idx[terms[mask.bit_length() - 1]]
            row[t] = weight[t]
            brow[t] = ("leaf",)
        else:
            low = mask & -mask
            # splits (sub, mask ^ sub) with sub holding the lowest terminal, each pair once
            sub = (mask - 1) & mask
            while sub:
                if sub & low:
                    other = mask ^ sub
                    a, b = best[sub], best[other]
                    for v in range(n):
                        merges += 1
                        cand = a[v] + b[v] - weight[v]
                        if cand < row[v]:
                            row[v] = cand
                            brow[v] = ("merge", sub)
                sub = (sub - 1) & mask
        heap = [(row[v], v) for v in range(n) if row[v] < inf]
        heapq.heapify(heap)
        while heap:
            d, v = heapq.heappop(heap)
            if d > row[v]:
                continue
            for u in nbrs[v]:
                relax += 1
                cand = d + weight[u]
                if cand < row[u]:
                    row[u] = cand
                    brow[u] = ("edge", v)
                    heapq.heappush(heap, (cand, u))

    if work is not None:
        work.merges += merges
        work.relaxations += relax

    root = min(range(n), key=lambda v: best[full][v])
    if best[full][root] == inf:
        return None
    out: set[int] = set()
    stack = [(full, root)]
    while stack:
        mask, v = stack.pop()
        out.add(v)
        step = back[mask][v]
        if step[0] == "merge":
            stack.append((step[1], v))
            stack.append((mask ^ step[1], v))
        elif step[0] == "edge":
            stack.append((mask, step[1]))
    assert sum(weight[v] for v in out) == best[full][root]
    return frozenset(allowed[v] for v in out)
