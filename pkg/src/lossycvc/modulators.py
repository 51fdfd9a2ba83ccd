"""Small-instance finders for the deletion sets and clique covers the solvers take as input.

Each deletion-set finder runs iterative deepening over a bounded search
tree that branches on the vertices of a forbidden induced subgraph, picked
deterministically (lowest ids first).  The first depth that succeeds gives
a minimum-size set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .graph import Graph, is_clique, perfect_elimination_order, split_partition

Obstruction = Callable[[Graph, frozenset[int]], Sequence[int] | None]


def _alive_neighbors(g: Graph, v: int, dead: frozenset[int]) -> list[int]:
    return sorted(g.neighbors(v) - dead)


def induced_p3(g: Graph, dead: frozenset[int] = frozenset()) -> tuple[int, int, int] | None:
    """``(a, b, c)`` with ``b`` adjacent to both ends and ``a``, ``c`` non-adjacent."""
    for b in range(g.n):
        if b in dead:
            continue
        nb = _alive_neighbors(g, b, dead)
        for a, c in combinations(nb, 2):
            if not g.has_edge(a, c):
                return a, b, c
    return None


def any_p3(g: Graph, dead: frozenset[int] = frozenset()) -> tuple[int, int, int] | None:
    for b in range(g.n):
        if b in dead:
            continue
        nb = _alive_neighbors(g, b, dead)
        if len(nb) >= 2:
            return nb[0], b, nb[1]
    return None


def _is_split_obstruction(g: Graph, vs: Sequence[int]) -> bool:
    degs = sorted(sum(1 for u in vs if u != v and g.has_edge(u, v)) for v in vs)
    if len(vs) == 4:
        # 2K2 is four vertices of degree 1; C4 is four of degree 2
        return degs == [1, 1, 1, 1] or degs == [2, 2, 2, 2]
    # a 2-regular graph on five vertices is C5
    return degs == [2, 2, 2, 2, 2]


def split_obstruction(g: Graph, dead: frozenset[int] = frozenset()) -> tuple[int, ...] | None:
    alive = [v for v in range(g.n) if v not in dead]
    sub, _ = g.induced(alive)
    if split_partition(sub) is not None:
        return None
    for size in (4, 5):
        for vs in combinations(alive, size):
            if _is_split_obstruction(g, vs):
                return vs
    raise AssertionError("non-split graph without 2K2, C4 or C5")


def shortest_chordless_cycle(g: Graph, dead: frozenset[int] = frozenset()) -> list[int] | None:
    """A shortest induced cycle of length at least four, or ``None`` if ``g - dead`` is chordal."""
    alive = [v for v in range(g.n) if v not in dead]
    sub, old_of_new = g.induced(alive)
    if perfect_elimination_order(sub) is not None:
        return None
    best: list[int] | None = None
    for v in alive:
        nb = _alive_neighbors(g, v, dead)
        blocked = set(nb) | {v} | set(dead)
        for u, w in combinations(nb, 2):
            if g.has_edge(u, w):
                continue
            path = _bfs_path(g, u, w, blocked - {u, w})
            if path is not None and (best is None or len(path) + 1 < len(best)):
                best = [v] + path
    assert best is not None and len(best) >= 4
    return best


def _bfs_path(g: Graph, src: int, dst: int, blocked: set[int]) -> list[int] | None:
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for u in sorted(g.neighbors(v)):
            if u not in prev and u not in blocked:
                prev[u] = v
                queue.append(u)
    return None


def _hitting_search(g: Graph, kmax: int, obstruction: Obstruction) -> frozenset[int] | None:
    def search(dead: frozenset[int], budget: int) -> frozenset[int] | None:
        obs = obstruction(g, dead)
        if obs is None:
            return dead
        if budget == 0:
            return None
        for v in sorted(obs):
            found = search(dead | {v}, budget - 1)
            if found is not None:
                return found
        return None

    for depth in range(kmax + 1):
        found = search(frozenset(), depth)
        if found is not None:
            return found
    return None


def find_cluster_deletion(g: Graph, kmax: int) -> frozenset[int] | None:
    return _hitting_search(g, kmax, induced_p3)


def find_split_deletion(g: Graph, kmax: int) -> frozenset[int] | None:
    return _hitting_search(g, kmax, split_obstruction)


def find_degree1_modulator(g: Graph, kmax: int) -> frozenset[int] | None:
    return _hitting_search(g, kmax, any_p3)


def find_chordal_deletion(g: Graph, kmax: int) -> frozenset[int] | None:
    if g.n > 30:
        raise ValueError("chordal deletion search is limited to 30 vertices")
    return _hitting_search(g, kmax, shortest_chordless_cycle)


def find_clique_deletion(g: Graph, kmax: int) -> frozenset[int] | None:
    """Delete one endpoint of some non-edge until the rest is a clique."""

    def non_edge(g: Graph, dead: frozenset[int]):
        alive = [v for v in range(g.n) if v not in dead]
        for a, b in combinations(alive, 2):
            if not g.has_edge(a, b):
                return a, b
        return None

    return _hitting_search(g, kmax, non_edge)


def find_degree2_modulator(g: Graph, kmax: int) -> frozenset[int] | None:
    """Branch on a vertex of degree three together with three of its neighbours."""

    def claw(g: Graph, dead: frozenset[int]):
        for v in range(g.n):
            if v not in dead:
                nb = _alive_neighbors(g, v, dead)
                if len(nb) >= 3:
                    return (v, *nb[:3])
        return None

    return _hitting_search(g, kmax, claw)


# ---------------------------------------------------------------- clique covers

EXACT_COVER_LIMIT = 15


@dataclass(frozen=True)
class CliqueCover:
    parts: tuple[frozenset[int], ...]
    exact: bool  # False when the greedy heuristic produced it

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.parts)


def _cover_with(g: Graph, q: int) -> tuple[frozenset[int], ...] | None:
    parts: list[set[int]] = []

    def place(v: int) -> bool:
        if v == g.n:
            return True
        for p in parts:
            if g.neighbors(v) >= p:
                p.add(v)
                if place(v + 1):
                    return True
                p.discard(v)
        if len(parts) < q:
            parts.append({v})
            if place(v + 1):
                return True
            parts.pop()
        return False

    if place(0):
        return tuple(sorted((frozenset(p) for p in parts), key=min))
    return None


def greedy_clique_cover(g: Graph) -> tuple[frozenset[int], ...]:
    remaining = set(range(g.n))
    parts = []
    while remaining:
        v = max(sorted(remaining), key=lambda u: len(g.neighbors(u) & remaining))
        clique = {v}
        for u in sorted(remaining, key=lambda u: (-len(g.neighbors(u) & remaining), u)):
            if u not in clique and g.neighbors(u) >= clique:
                clique.add(u)
        assert is_clique(g, clique)
        parts.append(frozenset(clique))
        remaining -= clique
    return tuple(sorted(parts, key=min))


def find_clique_cover(g: Graph, qmax: int) -> CliqueCover | None:
    """Fewest cliques covering ``g`` (exact up to 15 vertices, greedy above), if at most ``qmax``."""
    if g.n == 0:
        return CliqueCover((), True)
    if g.n > EXACT_COVER_LIMIT:
        parts = greedy_clique_cover(g)
        return CliqueCover(parts, False) if len(parts) <= qmax else None
    for q in range(1, qmax + 1):
        parts = _cover_with(g, q)
        if parts is not None:
            return CliqueCover(parts, True)
    return None


FINDERS = {
    "cluster": find_cluster_deletion,
    "split": find_split_deletion,
    "degree1": find_degree1_modulator,
    "degree2": find_degree2_modulator,
    "chordal": find_chordal_deletion,
    "clique": find_clique_deletion,
}


def find_modulator(g: Graph, kind: str, kmax: int) -> frozenset[int] | None:
    if kind not in FINDERS:
        raise ValueError(f"no modulator finder for {kind!r}")
    return FINDERS[kind](g, kmax)


__all__ = [
    "CliqueCover",
    "find_chordal_deletion",
    "find_clique_cover",
    "find_clique_deletion",
    "find_cluster_deletion",
    "find_degree1_modulator",
    "find_degree2_modulator",
    "find_modulator",
    "find_split_deletion",
    "greedy_clique_cover",
]
