"""Reduction from k-independent set to connected vertex cover under a clique cover.

Layer ``i`` holds a copy ``(v, i)`` of every vertex.  Two copies are adjacent
when they share a layer, share a vertex, or come from adjacent vertices.  A
hub ``x`` sees everything and a pendant ``y`` hangs off ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Instance, is_clique_cover
from .oracle import DEFAULT_BUDGET, OracleBudget, has_independent_set, max_nonseparating_is_bruteforce


@dataclass(frozen=True)
class Gadget:
    g_prime: Graph
    cover: tuple[frozenset[int], ...]
    n: int
    k: int

    def vertex(self, v: int, i: int) -> int:
        """Id of the copy ``(v, i)``; layers are numbered from 0."""
        return i * self.n + v

    @property
    def x(self) -> int:
        return self.k * self.n

    @property
    def y(self) -> int:
        return self.k * self.n + 1

    def instance(self) -> Instance:
        return Instance(self.g_prime, frozenset(), "cliquecover", self.cover)


def build_w1_gadget(g: Graph, k: int) -> Gadget:
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    edges = []
    copies = [(v, i) for i in range(k) for v in range(n)]
    for a, (v, i) in enumerate(copies):
        for u, j in copies[a + 1 :]:
            if i == j or u == v or g.has_edge(u, v):
                edges.append((i * n + v, j * n + u))
    x, y = k * n, k * n + 1
    edges.extend((c, x) for c in range(k * n))
    edges.append((x, y))
    layers = tuple(frozenset(range(i * n, (i + 1) * n)) for i in range(k) if n)
    cover = layers + (frozenset((x, y)),)
    gadget = Gadget(Graph(k * n + 2, edges), cover, n, k)
    assert is_clique_cover(gadget.g_prime, cover)
    return gadget


def verify_gadget(g: Graph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Both sides of the equivalence agree for ``(g, k)``."""
    gadget = build_w1_gadget(g, k)
    budget.check(gadget.g_prime)
    return has_independent_set(g, k) == max_nonseparating_is_bruteforce(gadget.g_prime, k + 1, budget)
