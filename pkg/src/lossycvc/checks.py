"""Invariant suites shared by the ``verify`` and ``bench`` subcommands.

Each suite takes a ``log`` callback for per-case lines and returns the list
of violations it found (empty when everything held).
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

from .fpt_cluster import solve_cluster
from .fpt_split import solve_split, terminal_sum_bound
from .gadgets import verify_gadget
from .graph import Graph, Instance, components, count_components, in_class, is_connected_vertex_cover
from .lossy import AlphaParams, lift
from .modulators import find_clique_cover, find_modulator
from .oracle import min_cvc_bruteforce, min_cvc_powerset, vc_component_sum
from .solvers import kernelize, solve
from .steiner import work_bound

Log = Callable[[str], None]
ALPHAS = (Fraction(6, 5), Fraction(3, 2), Fraction(2), Fraction(3))


def _quiet(_: str) -> None:
    pass


def small_graphs(nmax: int, connected: bool = True, nmin: int = 1) -> Iterator[Graph]:
    """Every graph up to isomorphism with ``nmin <= n <= nmax`` (``nmax`` at most 7)."""
    import networkx as nx

    if nmax > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for gx in nx.graph_atlas_g():
        n = gx.number_of_nodes()
        if n > nmax:
            break
        if n < nmin or (connected and (n == 0 or not nx.is_connected(gx))):
            continue
        yield Graph(n, list(gx.edges()))


def connected_graphs_8() -> Iterator[Graph]:
    """Connected 8-vertex graphs: a connected 7-vertex graph plus a vertex (with repeats)."""
    for g in small_graphs(7, nmin=7):
        edges = list(g.edges())
        for mask in range(1, 1 << 7):
            yield Graph(8, edges + [(7, u) for u in range(7) if mask >> u & 1])


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """G(n, p) plus a random spanning tree, so the result is connected."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph(n, sorted(edges))


def modulated_instances(g: Graph, kind: str, max_extra: int = 1) -> Iterator[Instance]:
    """A minimum modulator, plus supersets of it by up to ``max_extra`` vertices."""
    if kind in ("cliquecover", "modcc"):
        s = frozenset() if kind == "cliquecover" else find_modulator(g, "split", g.n) or frozenset()
        rest = sorted(set(range(g.n)) - s)
        h, old = g.induced(rest)
        cover = find_clique_cover(h, h.n)
        parts = tuple(frozenset(old[v] for v in p) for p in cover.parts)
        yield Instance(g, s, "cliquecover", parts)
        return
    base = find_modulator(g, kind, g.n)
    seen = {base}
    yield Instance(g, base, kind)
    others = [v for v in range(g.n) if v not in base]
    for r in range(1, max_extra + 1):
        for extra in combinations(others, r):
            s = base | frozenset(extra)
            h, _ = g.induced(sorted(set(range(g.n)) - s))
            if s not in seen and in_class(h, kind):
                seen.add(s)
                yield Instance(g, s, kind)


SOLVER_KINDS = ("split", "clique", "cluster", "degree1", "chordal", "degree2", "cliquecover", "modcc")


def check_oracle(nmax: int, log: Log = _quiet) -> list[str]:
    bad = []
    for g in small_graphs(min(nmax, 7)):
        opt = min_cvc_bruteforce(g)
        if opt != min_cvc_powerset(g):
            bad.append(f"oracles disagree on {list(g.edges())}")
        for kind in SOLVER_KINDS:
            for inst in modulated_instances(g, kind):
                sol, _ = solve(inst)
                ok = sol is not None and len(sol) == len(opt) and is_connected_vertex_cover(g, sol)
                log(f"oracle {kind} n={g.n} m={g.m} S={sorted(inst.modulator)} -> {'ok' if ok else 'FAIL'}")
                if not ok:
                    bad.append(f"{kind} {list(g.edges())} S={sorted(inst.modulator)}: {sol} vs {opt}")
    return bad


KERNEL_KINDS = ("split", "clique", "cluster", "degree1", "cliquecover", "modcc")


def check_kernel(nmax: int, log: Log = _quiet, alphas=ALPHAS) -> list[str]:
    bad = []
    for g in small_graphs(min(nmax, 7), nmin=2):
        opt = len(min_cvc_bruteforce(g))
        for kind in KERNEL_KINDS:
            for inst in modulated_instances(g, kind, max_extra=0):
                for a in alphas:
                    problem = alpha_guarantee_violation(inst, kind, a, opt)
                    if problem:
                        bad.append(problem)
                    log(f"kernel {kind} alpha={a} n={g.n} -> {'FAIL' if problem else 'ok'}")
    return bad


def alpha_guarantee_violation(inst: Instance, param: str, alpha, opt: int) -> str | None:
    reduced, chain, cert = kernelize(inst, alpha, param)
    if not cert.holds:
        return f"{param} certificate fails: {cert.as_dict()}"
    sol, _ = solve(reduced)
    if sol is None:
        return f"{param}: reduced instance unsolved"
    lifted = lift(chain, sol)
    if not is_connected_vertex_cover(inst.graph, lifted):
        return f"{param}: lifted set infeasible"
    if len(lifted) > Fraction(alpha) * opt:
        return f"{param} alpha={alpha}: lifted {len(lifted)} > alpha * {opt}"
    return None


def check_gadget(nmax: int, log: Log = _quiet, trials: int = 100, seed: int = 0, kmax: int = 3) -> list[str]:
    bad = []
    for g in small_graphs(min(nmax, 7), connected=False, nmin=0):
        for k in range(1, kmax + 1):
            ok = verify_gadget(g, k)
            log(f"gadget n={g.n} m={g.m} k={k} -> {'ok' if ok else 'FAIL'}")
            if not ok:
                bad.append(f"gadget {list(g.edges())} k={k}")
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, 6)
        k = rng.randint(1, 3)
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
        if not verify_gadget(g, k):
            bad.append(f"gadget {list(g.edges())} k={k}")
    return bad


def check_vcsum(nmax: int, log: Log = _quiet) -> list[str]:
    bad = []
    graphs: Iterator[Graph] = small_graphs(min(nmax, 7), connected=False, nmin=0)
    for g in graphs:
        total, bound, holds = vc_component_sum(g)
        if not holds:
            bad.append(f"vcsum {list(g.edges())}: {total} > {bound}")
    log(f"vcsum all graphs n<={min(nmax, 7)} -> {'ok' if not bad else 'FAIL'}")
    if nmax >= 8:
        # the sum and the bound are both multiplicative over components
        for g in connected_graphs_8():
            total, bound, holds = vc_component_sum(g)
            if not holds:
                bad.append(f"vcsum {list(g.edges())}: {total} > {bound}")
        log(f"vcsum connected n=8 -> {'ok' if not bad else 'FAIL'}")
    return bad


# ---------------------------------------------------------------- bench suites


def _connect_through(rng: random.Random, n: int, edges: set, s: list[int]) -> Graph:
    """Add edges from modulator vertices until the graph is connected; ``G - S`` is untouched."""
    while True:
        g = Graph(n, sorted(edges))
        comps = components(g)
        if len(comps) <= 1:
            return g
        if not s:
            raise ValueError("cannot connect the parts without modulator vertices")
        u = rng.choice(s)
        others = [c for c in comps if u not in c]
        v = rng.choice(sorted(rng.choice(others)))
        edges.add((min(u, v), max(u, v)))


def random_split_instance(rng: random.Random, k: int, clique: int, indep: int, p: float = 0.5) -> Instance:
    """Clique ``C``, independent ``I`` and a ``k``-vertex modulator, connected."""
    n = k + clique + indep
    s = list(range(k))
    c = list(range(k, k + clique))
    i = list(range(k + clique, n))
    edges = {tuple(sorted(e)) for e in combinations(c, 2)}
    for u in i:
        for v in c + s:
            if rng.random() < p / 2:
                edges.add((min(u, v), max(u, v)))
    for u in s:
        for v in range(n):
            if v != u and rng.random() < p:
                edges.add((min(u, v), max(u, v)))
    return Instance(_connect_through(rng, n, edges, s or c), frozenset(s), "split")


def random_cluster_instance(rng: random.Random, k: int, sizes: list[int], p: float = 0.4, kind: str = "cluster") -> Instance:
    n = k + sum(sizes)
    edges = set()
    start = k
    for size in sizes:
        edges.update(combinations(range(start, start + size), 2))
        start += size
    for u in range(k):
        for v in range(n):
            if v != u and rng.random() < p:
                edges.add((min(u, v), max(u, v)))
    return Instance(_connect_through(rng, n, edges, list(range(k))), frozenset(range(k)), kind)


def bench_split(rng: random.Random, ks=(1, 2, 3, 4), reps: int = 3) -> list[dict]:
    rows = []
    for k in ks:
        for _ in range(reps):
            inst = random_split_instance(rng, k, rng.randint(2, 5), rng.randint(3, 8), p=0.25)
            sol, stats = solve_split(inst)
            bound = terminal_sum_bound(inst.graph, inst.modulator)
            d = count_components(inst.graph, inst.modulator)
            measured = max(stats.terminal_sums.values(), default=0)
            steiner_bound = sum(work_bound(q, inst.graph.n) for q in stats.steiner_terminal_counts)
            rows.append(
                {
                    "suite": "split-scaling",
                    "k": k,
                    "n": inst.graph.n,
                    "d": d,
                    "measured": measured,
                    "bound": bound,
                    "steiner_work": stats.steiner_work,
                    "steiner_bound": steiner_bound,
                    "elapsed_ms": round(stats.elapsed * 1000, 3),
                    "ok": measured <= bound and stats.steiner_work <= steiner_bound,
                }
            )
    return rows


def leaf_bound_violations(stats) -> list[str]:
    """Per-guess leaf count and per-leaf terminal count against the branching analysis."""
    out = []
    for sprime, log in stats.leaf_log.items():
        s = len(sprime)
        if len(log) > 3**s:
            out.append(f"S'={sorted(sprime)}: {len(log)} leaves > 3^{s}")
        for depth, comps in log:
            if comps > max(1, s - depth):
                out.append(f"S'={sorted(sprime)}: leaf at depth {depth} has {comps} terminals > {max(1, s - depth)}")
    return out


def bench_cluster(rng: random.Random, ks=(1, 2, 3, 4), reps: int = 3, prune: bool = False) -> list[dict]:
    rows = []
    for k in ks:
        for _ in range(reps):
            sizes = [rng.randint(1, 4) for _ in range(rng.randint(2, 5))]
            inst = random_cluster_instance(rng, k, sizes)
            sol, stats = solve_cluster(inst, prune=prune)
            problems = leaf_bound_violations(stats)
            rows.append(
                {
                    "suite": "cluster-scaling",
                    "k": k,
                    "n": inst.graph.n,
                    "measured": stats.leaves,
                    "bound": 4**k,
                    "terminal_bound": 3 * k * 4 ** max(k - 1, 0),
                    "elapsed_ms": round(stats.elapsed * 1000, 3),
                    "ok": not problems and stats.leaves <= 4**k,
                    "violations": "; ".join(problems),
                }
            )
    return rows


def bench_kernel_sizes(rng: random.Random, alphas=ALPHAS, reps: int = 3) -> list[dict]:
    rows = []
    for a in alphas:
        for k in (1, 2, 3):
            for _ in range(reps):
                for param, inst in (
                    ("split", random_split_instance(rng, k, rng.randint(2, 12), rng.randint(3, 20))),
                    ("cluster", random_cluster_instance(rng, k, [rng.randint(1, 6) for _ in range(rng.randint(1, 8))])),
                ):
                    start = time.perf_counter()
                    reduced, _, cert = kernelize(inst, a, param)
                    rows.append(
                        {
                            "suite": "kernel-sizes",
                            "param": param,
                            "alpha": str(a),
                            "k": k,
                            "n": inst.graph.n,
                            "measured": reduced.graph.n,
                            "bound": str(cert.bound),
                            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
                            "ok": cert.holds,
                        }
                    )
    return rows


BENCH_SUITES = {
    "split-scaling": bench_split,
    "cluster-scaling": bench_cluster,
    "kernel-sizes": bench_kernel_sizes,
}

VERIFY_MODES = {
    "oracle": check_oracle,
    "kernel": check_kernel,
    "gadget": check_gadget,
    "vcsum": check_vcsum,
}
