"""Exponential reference implementations.

Everything here is deliberately naive: subset enumeration over bitmasks.
The oracles exist to check the real solvers, so they must stay simple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph

MAX_VERTICES = 24


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = MAX_VERTICES

    def __post_init__(self):
        if self.max_vertices > MAX_VERTICES:
            raise ValueError(f"oracle budget is capped at {MAX_VERTICES} vertices")

    def check(self, g: Graph) -> None:
        if g.n > self.max_vertices:
            raise BudgetExceeded(f"graph has {g.n} vertices, budget is {self.max_vertices}")


DEFAULT_BUDGET = OracleBudget()


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _edge_masks(g: Graph) -> list[int]:
    return [(1 << u) | (1 << v) for u, v in g.edges()]


def _covers(mask: int, edge_masks: list[int]) -> bool:
    for e in edge_masks:
        if not mask & e:
            return False
    return True


def _component_count(mask: int, adj: list[int]) -> int:
    count = 0
    rest = mask
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            nb = adj[low.bit_length() - 1] & rest & ~comp
            comp |= nb
            frontier |= nb
        rest &= ~comp
        count += 1
    return count


def _connected(mask: int, adj: list[int]) -> bool:
    return _component_count(mask, adj) <= 1


def _min_subset(g: Graph, feasible, required: int = 0) -> frozenset[int] | None:
    """Smallest feasible superset of ``required``; lexicographically least among minima."""
    free = [v for v in range(g.n) if not required >> v & 1]
    for size in range(len(free) + 1):
        for combo in combinations(free, size):
            mask = required | _mask(combo)
            if feasible(mask):
                return frozenset(_bits(mask))
    return None


def min_cvc_bruteforce(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset[int] | None:
    """Minimum connected vertex cover by increasing-size subset streaming.

    ``combinations`` yields subsets of one size in lexicographic order, so the
    first hit is the lexicographically least minimum.  Returns ``None`` when
    the edges span two or more components.
    """
    budget.check(g)
    adj = g.masks()
    em = _edge_masks(g)
    return _min_subset(g, lambda m: _covers(m, em) and _connected(m, adj))


def min_cvc_powerset(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset[int] | None:
    """Second enumeration strategy: scan the full power set and keep the best key."""
    budget.check(g)
    adj = g.masks()
    em = _edge_masks(g)
    best = None
    for mask in range(1 << g.n):
        if _covers(mask, em) and _connected(mask, adj):
            key = (bin(mask).count("1"), sorted(_bits(mask)))
            if best is None or key < best:
                best = key
    return None if best is None else frozenset(best[1])


def min_vc_bruteforce(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset[int]:
    budget.check(g)
    em = _edge_masks(g)
    return _min_subset(g, lambda m: _covers(m, em))


def cvc_size(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int | None:
    sol = min_cvc_bruteforce(g, budget)
    return None if sol is None else len(sol)


def vc_component_sum(h: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[int, int, bool]:
    """Sum of ``2**comp(h[C])`` over all vertex covers ``C`` against ``3**d * 2**(h-d)``."""
    budget.check(h)
    adj = h.masks()
    em = _edge_masks(h)
    total = 0
    for mask in range(1 << h.n):
        if _covers(mask, em):
            total += 1 << _component_count(mask, adj)
    d = _component_count((1 << h.n) - 1, adj)
    bound = 3**d * 2 ** (h.n - d)
    return total, bound, total <= bound


def has_independent_set(g: Graph, size: int) -> bool:
    return independent_set_of_size(g, size) is not None


def independent_set_of_size(g: Graph, size: int) -> frozenset[int] | None:
    adj = g.masks()

    def extend(chosen: list[int], allowed: int) -> list[int] | None:
        if len(chosen) == size:
            return chosen
        if bin(allowed).count("1") < size - len(chosen):
            return None
        while allowed:
            low = allowed & -allowed
            v = low.bit_length() - 1
            allowed ^= low
            found = extend(chosen + [v], allowed & ~adj[v])
            if found is not None:
                return found
        return None

    if size < 0:
        return None
    found = extend([], (1 << g.n) - 1)
    return None if found is None else frozenset(found)


def max_nonseparating_is_bruteforce(g: Graph, size: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Is there an independent ``I`` with ``|I| = size`` and ``V - I`` a connected vertex cover?"""
    budget.check(g)
    adj = g.masks()
    full = (1 << g.n) - 1

    # V - I is automatically a vertex cover when I is independent.
    def extend(count: int, chosen: int, allowed: int) -> bool:
        if count == size:
            return _connected(full & ~chosen, adj)
        if bin(allowed).count("1") < size - count:
            return False
        while allowed:
            low = allowed & -allowed
            v = low.bit_length() - 1
            allowed ^= low
            if extend(count + 1, chosen | low, allowed & ~adj[v]):
                return True
        return False

    if size < 0 or size > g.n:
        return False
    return extend(0, 0, full)


def min_steiner_superset_bruteforce(
    g: Graph, q, budget: OracleBudget = DEFAULT_BUDGET
) -> frozenset[int] | None:
    """Minimum ``X`` containing ``q`` with ``g[X]`` connected (``None`` if impossible)."""
    budget.check(g)
    adj = g.masks()
    required = _mask(q)
    if not required:
        return frozenset()
    return _min_subset(g, lambda m: _connected(m, adj), required)
