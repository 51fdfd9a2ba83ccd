"""Approximate kernels for connected vertex cover with solution lifting.

Every reduction produces a fresh instance plus a :class:`LiftStep` that can
turn a solution of the reduced instance back into one of the instance it
came from.  Surviving vertices are renumbered in increasing old-id order and
new vertices are appended after them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import (
    Graph,
    Instance,
    KindMismatch,
    components,
    count_components,
    in_class,
    is_clique,
    is_connected_vertex_cover,
    is_vertex_cover,
    remove_isolated,
    split_partition,
)

SCHEMA = 1


# ---------------------------------------------------------------- values and parameters


@dataclass(frozen=True, order=False)
class CvcValue:
    tag: str  # "neg_inf" | "finite" | "pos_inf"
    size: int | None = None

    @classmethod
    def finite(cls, size: int) -> "CvcValue":
        return cls("finite", size)

    @property
    def is_finite(self) -> bool:
        return self.tag == "finite"

    def __repr__(self) -> str:
        return {"neg_inf": "-inf", "pos_inf": "+inf"}.get(self.tag, str(self.size))


NEG_INF = CvcValue("neg_inf")
POS_INF = CvcValue("pos_inf")


def cvc_value(inst: Instance, k: int, t_set: Iterable[int]) -> CvcValue:
    """Objective of the parameterized problem: the first applicable case wins."""
    g = inst.graph
    if len(inst.modulator) > k:
        return NEG_INF
    h, old_of_new = g.induced(sorted(inst.rest()))
    cover = None
    if inst.kind == "cliquecover":
        if inst.cover is None:
            return NEG_INF
        new_of_old = {v: i for i, v in enumerate(old_of_new)}
        if any(v not in new_of_old for part in inst.cover for v in part):
            return NEG_INF
        cover = [{new_of_old[v] for v in part} for part in inst.cover]
    if not in_class(h, inst.kind, cover):
        return NEG_INF
    t_set = frozenset(t_set)
    if not t_set <= frozenset(range(g.n)) or not is_connected_vertex_cover(g, t_set):
        return POS_INF
    return CvcValue.finite(len(t_set))


def ratio(value: int | None, opt: int | None) -> Fraction | float:
    """``value / opt`` with ``0/0 = 1`` and ``x/0 = inf`` for positive ``x``."""
    if value is None:
        return math.inf
    if opt == 0:
        return Fraction(1) if value == 0 else math.inf
    return Fraction(value, opt)


@dataclass(frozen=True)
class AlphaParams:
    alpha: Fraction
    d1: int
    d2: int
    eps: Fraction

    @classmethod
    def of(cls, alpha) -> "AlphaParams":
        a = Fraction(alpha) if not isinstance(alpha, float) else Fraction(str(alpha))
        if a <= 1:
            raise ValueError("alpha must exceed 1")
        d1 = math.ceil((2 * a - 1) / (a - 1))
        d2 = math.ceil(a / (a - 1))
        params = cls(a, d1, d2, a - 1)
        assert d1 >= 3 and d2 >= 2
        assert a >= Fraction(d1 - 1, d1 - 2)
        return params


# ---------------------------------------------------------------- lift steps and chains


@dataclass
class LiftStep:
    rule: str
    kept: list[int]  # new id -> old id for surviving vertices
    n_before: int
    n_after: int
    params: dict
    fallback: frozenset[int] | None = None  # connected vertex cover of the "before" graph
    before: Instance | None = field(default=None, repr=False, compare=False)
    after: Instance | None = field(default=None, repr=False, compare=False)

    def map_back(self, vs: Iterable[int]) -> set[int]:
        return {self.kept[v] for v in vs if v < len(self.kept)}

    def lift(self, sol: Iterable[int]) -> frozenset[int]:
        sol = frozenset(sol)
        p = self.params
        if self.rule == "drop_isolated":
            return frozenset(self.map_back(sol))
        if self.rule == "constant":
            return self.fallback
        if self.rule == "collapse_clique":
            clique = frozenset(p["clique"])
            if p["u_c"] in sol:
                return frozenset(self.map_back(sol - {p["u_c"]}) | clique)
            return frozenset(self.map_back(sol) | (clique - {p["x"]}))
        if self.rule == "high_degree":
            if p["w"] not in sol:
                return self.fallback
            return frozenset(self.map_back(sol - set(p["pendants"]) - {p["w"]}) | set(p["closed_nbhd"]))
        if self.rule == "false_twin":
            twins_new = {self.kept.index(t) for t in p["twins"]}
            if twins_new <= sol or (len(sol) >= p["threshold"] and len(self.fallback) <= len(sol)):
                return self.fallback
            return frozenset(self.map_back(sol))
        raise ValueError(f"unknown rule {self.rule!r}")

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "kept": list(self.kept),
            "n_before": self.n_before,
            "n_after": self.n_after,
            "params": {k: (sorted(v) if isinstance(v, (set, frozenset, list, tuple)) else v) for k, v in self.params.items()},
            "fallback": None if self.fallback is None else sorted(self.fallback),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LiftStep":
        params = dict(doc["params"])
        return cls(
            rule=doc["rule"],
            kept=list(doc["kept"]),
            n_before=doc["n_before"],
            n_after=doc["n_after"],
            params=params,
            fallback=None if doc["fallback"] is None else frozenset(doc["fallback"]),
        )


@dataclass
class LiftChain:
    source: Instance
    target: Instance
    steps: list[LiftStep] = field(default_factory=list)

    def to_json(self) -> str:
        def inst_doc(inst: Instance) -> dict:
            return {
                "n": inst.graph.n,
                "edges": [list(e) for e in inst.graph.edges()],
                "modulator": sorted(inst.modulator),
                "kind": inst.kind,
                "cover": None if inst.cover is None else [sorted(p) for p in inst.cover],
            }

        return json.dumps(
            {
                "schema": SCHEMA,
                "source": inst_doc(self.source),
                "target": inst_doc(self.target),
                "steps": [s.to_json() for s in self.steps],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "LiftChain":
        doc = json.loads(text)
        if doc.get("schema") != SCHEMA:
            raise ValueError(f"unsupported lift chain schema {doc.get('schema')!r}")

        def inst_of(d: dict) -> Instance:
            cover = None if d["cover"] is None else tuple(frozenset(p) for p in d["cover"])
            return Instance(Graph(d["n"], [tuple(e) for e in d["edges"]]), frozenset(d["modulator"]), d["kind"], cover)

        return cls(inst_of(doc["source"]), inst_of(doc["target"]), [LiftStep.from_json(s) for s in doc["steps"]])


class ChainMismatch(ValueError):
    pass


def lift(chain: LiftChain, reduced_solution: Iterable[int]) -> frozenset[int]:
    """Map a solution of ``chain.target`` back to ``chain.source``.

    An infeasible reduced solution is replaced by the first step's fallback
    cover, which is feasible for the source graph.
    """
    sol = frozenset(reduced_solution)
    target = chain.target.graph
    if not sol <= frozenset(range(target.n)):
        raise ChainMismatch("solution mentions vertices outside the reduced graph")
    if not is_connected_vertex_cover(target, sol):
        fallbacks = [s.fallback for s in chain.steps if s.fallback is not None]
        if not fallbacks:
            raise ChainMismatch("reduced solution is infeasible and the chain has no fallback")
        # the first stored fallback belongs to the earliest instance that has one
        idx = next(i for i, s in enumerate(chain.steps) if s.fallback is not None)
        sol = chain.steps[idx].fallback
        for step in reversed(chain.steps[:idx]):
            sol = step.lift(sol)
        return sol
    for step in reversed(chain.steps):
        sol = step.lift(sol)
    return sol


# ---------------------------------------------------------------- helpers


def _rebuild(
    g: Graph,
    deleted: Iterable[int],
    new_vertices: int,
    new_edges: Iterable[tuple[int, int]],
) -> tuple[Graph, list[int], dict[int, int]]:
    """Delete vertices, append ``new_vertices`` fresh ones and add edges (new ids)."""
    deleted = set(deleted)
    kept = [v for v in range(g.n) if v not in deleted]
    new_of_old = {v: i for i, v in enumerate(kept)}
    edges = [(new_of_old[u], new_of_old[v]) for u, v in g.edges() if u in new_of_old and v in new_of_old]
    edges.extend(new_edges)
    return Graph(len(kept) + new_vertices, edges), kept, new_of_old


def connect_greedily(g: Graph, t: Iterable[int]) -> frozenset[int]:
    """Add outside vertices touching the most components of ``G[T]`` until it is connected.

    ``T`` must be a vertex cover of a connected graph, so every outside vertex
    has all its neighbours in ``T`` and some outside vertex always bridges two
    components while more than one remains.
    """
    t = set(t)
    while count_components(g, t) > 1:
        owner = {}
        for i, c in enumerate(components(g, t)):
            for v in c:
                owner[v] = i
        best, best_hits = None, 1
        for v in range(g.n):
            if v in t:
                continue
            hits = len({owner[u] for u in g.neighbors(v) if u in owner})
            if hits > best_hits:
                best, best_hits = v, hits
        if best is None:
            raise ValueError("cannot connect the cover: graph is disconnected")
        t.add(best)
    return frozenset(t)


def dfs_cover(g: Graph) -> frozenset[int]:
    """Internal vertices of a DFS tree: a connected vertex cover of a connected graph."""
    if g.m == 0:
        return frozenset()
    if g.m == 1 and g.n == 2:
        return frozenset([0])
    start = next(v for v in range(g.n) if g.degree(v))
    parent = {start: None}
    stack = [(start, iter(sorted(g.neighbors(start))))]
    internal = set()
    while stack:
        v, it = stack[-1]
        for u in it:
            if u not in parent:
                parent[u] = v
                internal.add(v)
                stack.append((u, iter(sorted(g.neighbors(u)))))
                break
        else:
            stack.pop()
    if not internal:
        internal = {start}
    assert is_connected_vertex_cover(g, internal)
    return frozenset(internal)


def _check_kind(inst: Instance, kinds: Sequence[str]) -> None:
    if inst.kind not in kinds:
        raise KindMismatch(f"expected one of {kinds}, got {inst.kind}")
    h, old_of_new = inst.graph.induced(sorted(inst.rest()))
    cover = None
    if inst.kind == "cliquecover":
        new_of_old = {v: i for i, v in enumerate(old_of_new)}
        if inst.cover is None or any(v not in new_of_old for p in inst.cover for v in p):
            raise KindMismatch("invalid clique cover")
        cover = [{new_of_old[v] for v in p} for p in inst.cover]
    if not in_class(h, inst.kind, cover):
        raise KindMismatch(f"G - S is not {inst.kind}")


def _prepare(inst: Instance, kinds: Sequence[str]) -> tuple[Instance, list[LiftStep]]:
    """Validate, then drop isolated vertices (recorded as an id-remapping step)."""
    _check_kind(inst, kinds)
    g = inst.graph
    h, removed, kept = remove_isolated(g)
    steps: list[LiftStep] = []
    if removed:
        new_of_old = {v: i for i, v in enumerate(kept)}
        cover = None
        if inst.cover is not None:
            cover = tuple(frozenset(new_of_old[v] for v in p if v in new_of_old) for p in inst.cover)
            cover = tuple(p for p in cover if p)
        after = Instance(h, frozenset(new_of_old[v] for v in inst.modulator if v in new_of_old), inst.kind, cover)
        steps.append(LiftStep("drop_isolated", kept, g.n, h.n, {"removed": sorted(removed)}, None, inst, after))
        inst = after
    if inst.graph.n and count_components(inst.graph) > 1:
        raise ValueError("edges span several components: no connected vertex cover exists")
    return inst, steps


# ---------------------------------------------------------------- rule 1: collapse a clique


def rule_collapse_clique(inst: Instance, clique: Iterable[int], d: int = 2):
    """Replace the clique ``C`` by one vertex adjacent to ``N(C)``."""
    g = inst.graph
    c = frozenset(clique)
    if len(c) < max(d, 2) or not is_clique(g, c):
        raise ValueError("collapse rule not applicable")
    outside = g.neighborhood(c)
    # keep a vertex with outside neighbours when possible: exclude the first x whose removal still touches N(C)
    x = min(c)
    for cand in sorted(c):
        if any(g.neighbors(v) - c for v in c - {cand}):
            x = cand
            break
    fallback = dfs_cover(g) if count_components(g) == 1 else None
    h, kept, new_of_old = _rebuild(g, c, 1, [])
    u_c = len(kept)
    h = Graph(h.n, list(h.edges()) + [(new_of_old[v], u_c) for v in outside])
    s = frozenset(new_of_old[v] for v in inst.modulator)
    cover = None
    if inst.cover is not None:
        parts = []
        for p in inst.cover:
            if frozenset(p) == c:
                parts.append(frozenset([u_c]))
            else:
                parts.append(frozenset(new_of_old[v] for v in p))
        cover = tuple(parts)
    after = Instance(h, s, inst.kind, cover)
    step = LiftStep("collapse_clique", kept, g.n, h.n, {"clique": sorted(c), "u_c": u_c, "x": x}, fallback, inst, after)
    return after, step


# ---------------------------------------------------------------- rules 2 and 3


def partition_bir(g: Graph, k: int, d: int) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    b = frozenset(v for v in range(g.n) if g.degree(v) >= 2 * k + d)
    i_b = frozenset(v for v in range(g.n) if v not in b and g.neighbors(v) <= b)
    r = frozenset(range(g.n)) - b - i_b
    return b, i_b, r


def rule_high_degree(
    inst: Instance,
    u: int,
    k: int,
    d: int,
    fallback: frozenset[int],
) -> tuple[Instance, LiftStep]:
    """Replace ``N[u]`` by a vertex ``w`` on ``N(N(u)) - u`` plus ``2k+d`` pendants on ``w``."""
    g = inst.graph
    nu = g.neighbors(u)
    closed = nu | {u}
    second = g.neighborhood(nu) - closed
    pendants = 2 * k + d
    h, kept, new_of_old = _rebuild(g, closed, 1 + pendants, [])
    w = len(kept)
    edges = list(h.edges()) + [(new_of_old[v], w) for v in second] + [(w, w + 1 + i) for i in range(pendants)]
    h = Graph(h.n, edges)
    s_new = frozenset(new_of_old[v] for v in inst.modulator - nu) | {w}
    assert len(s_new) <= len(inst.modulator), "modulator grew under the high-degree rule"
    after = Instance(h, s_new, inst.kind, None)
    step = LiftStep(
        "high_degree",
        kept,
        g.n,
        h.n,
        {"u": u, "closed_nbhd": sorted(closed), "w": w, "pendants": list(range(w + 1, w + 1 + pendants))},
        fallback,
        inst,
        after,
    )
    return after, step


def rule_false_twins(
    inst: Instance,
    x: int,
    twins: Iterable[int],
    threshold: int,
    fallback: frozenset[int],
) -> tuple[Instance, LiftStep]:
    """Delete ``x``, which has at least ``threshold`` false twins."""
    g = inst.graph
    twins = sorted(twins)
    if len(twins) < threshold:
        raise ValueError("false-twin rule not applicable")
    h, kept, new_of_old = _rebuild(g, [x], 0, [])
    after = Instance(h, frozenset(new_of_old[v] for v in inst.modulator if v != x), inst.kind, None)
    step = LiftStep(
        "false_twin", kept, g.n, h.n, {"x": x, "twins": twins, "threshold": threshold}, fallback, inst, after
    )
    return after, step


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class SizeCertificate:
    vertices: int
    bound: Fraction
    terms: dict

    @property
    def holds(self) -> bool:
        return self.vertices <= self.bound

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "bound": str(self.bound),
            "holds": self.holds,
            "terms": {k: str(v) for k, v in self.terms.items()},
        }


def binom_upto(n: int, r: int) -> int:
    return sum(math.comb(n, i) for i in range(0, r + 1))


def split_certificate(n_vertices: int, k: int, d1: int) -> SizeCertificate:
    terms = {
        "modulator": k,
        "clique": d1 - 1,
        "rest": 2 * (2 * k + d1 - 1) ** 2,
        "high_degree": 2 * k + d1 - 1,
        "ib_in_modulator": k,
        "ib_outside": (2 * k + d1) * binom_upto(2 * k + d1 - 1, d1 - 1),
    }
    return SizeCertificate(n_vertices, Fraction(sum(terms.values())), terms)


def cluster_certificate(n_vertices: int, k: int, params: AlphaParams, clique_cap: int | None = None) -> SizeCertificate:
    cap = params.d1 if clique_cap is None else clique_cap
    terms = {
        "modulator": Fraction(k),
        "cliques": Fraction(2 * k) / params.eps * cap,
        "a0": Fraction(2 * (params.d2 - 1) * k**params.d2),
        "b0": Fraction(2 * k * k),
    }
    return SizeCertificate(n_vertices, sum(terms.values()), terms)


# ---------------------------------------------------------------- drivers


def two_approx_cvc(inst: Instance, clique: Iterable[int]) -> frozenset[int]:
    """``S`` plus the clique side, then greedy connectors."""
    return connect_greedily(inst.graph, inst.modulator | frozenset(clique))


def _split_sides(inst: Instance) -> tuple[frozenset[int], frozenset[int]]:
    h, old_of_new = inst.graph.induced(sorted(inst.rest()))
    part = split_partition(h)
    if part is None:
        raise KindMismatch("G - S is not split")
    return frozenset(old_of_new[v] for v in part.clique), frozenset(old_of_new[v] for v in part.independent)


def high_degree_candidates(inst: Instance, k: int, d: int) -> list[int]:
    g = inst.graph
    _, i_b, _ = partition_bir(g, k, d)
    return sorted(u for u in i_b - inst.modulator if g.degree(u) >= d and g.neighbors(u) & inst.modulator)


def twin_candidates(pool: frozenset[int], g: Graph, threshold: int) -> list[tuple[int, list[int]]]:
    groups: dict[frozenset[int], list[int]] = {}
    for v in sorted(pool):
        groups.setdefault(g.neighbors(v), []).append(v)
    out = []
    for members in groups.values():
        if len(members) - 1 >= threshold:
            for x in members:
                out.append((x, [y for y in members if y != x]))
    return sorted(out)


def _apply_split_rules(inst: Instance, k: int, d: int, clique: frozenset[int], steps: list[LiftStep]):
    """Alternate the high-degree and false-twin rules, lowest id first, to exhaustion."""
    g = inst.graph
    guard = 0
    while True:
        guard += 1
        assert guard <= 4 * (g.n + 10) ** 2, "rules failed to terminate"
        g = inst.graph
        cands = high_degree_candidates(inst, k, d)
        if cands:
            u = cands[0]
            fallback = two_approx_cvc(inst, clique)
            assert len(fallback) <= 2 * k + d - 1
            inst, step = rule_high_degree(inst, u, k, d, fallback)
            new_of_old = {v: i for i, v in enumerate(step.kept)}
            clique = frozenset(new_of_old[v] for v in clique if v in new_of_old)
            steps.append(step)
            continue
        _, i_b, _ = partition_bir(g, k, d)
        twins = twin_candidates(i_b - inst.modulator, g, 2 * k + d)
        if twins:
            x, others = twins[0]
            fallback = two_approx_cvc(inst, clique)
            inst, step = rule_false_twins(inst, x, others, 2 * k + d, fallback)
            new_of_old = {v: i for i, v in enumerate(step.kept)}
            clique = frozenset(new_of_old[v] for v in clique if v in new_of_old)
            steps.append(step)
            continue
        return inst, clique


def psaks_split(inst: Instance, k: int | None = None, params: AlphaParams | None = None):
    params = params or AlphaParams.of(2)
    source = inst
    inst, steps = _prepare(inst, ("split",))
    k = len(source.modulator) if k is None else k
    d = params.d1
    clique, _ = _split_sides(inst)
    if len(clique) >= d:
        inst, step = rule_collapse_clique(inst, clique, d=d)
        steps.append(step)
        clique = frozenset([step.params["u_c"]])
    inst, clique = _apply_split_rules(inst, k, d, clique, steps)
    cert = split_certificate(inst.graph.n, k, d)
    assert cert.holds, cert
    return inst, LiftChain(source, inst, steps), cert


def psaks_clique_deletion(inst: Instance, k: int | None = None, params: AlphaParams | None = None):
    params = params or AlphaParams.of(2)
    source = inst
    inst, steps = _prepare(inst, ("clique",))
    k = len(source.modulator) if k is None else k
    clique = inst.rest()
    if len(clique) >= params.d1:
        inst, step = rule_collapse_clique(inst, clique, d=params.d1)
        steps.append(step)
    cert = SizeCertificate(inst.graph.n, Fraction(k + params.d1), {"modulator": k, "clique": params.d1})
    assert cert.holds, cert
    return inst, LiftChain(source, inst, steps), cert


def _collapse_cover(inst: Instance, d: int, steps: list[LiftStep]) -> Instance:
    while True:
        big = [p for p in inst.cover if len(p) >= d]
        if not big:
            return inst
        target = min(big, key=min)
        inst, step = rule_collapse_clique(inst, target, d=d)
        steps.append(step)


def psaks_clique_cover(inst: Instance, k: int | None = None, params: AlphaParams | None = None):
    params = params or AlphaParams.of(2)
    if inst.modulator:
        raise KindMismatch("pure clique-cover kernel expects an empty modulator")
    source = inst
    inst, steps = _prepare(inst, ("cliquecover",))
    k = len(source.cover) if k is None else k
    inst = _collapse_cover(inst, params.d1, steps)
    cert = SizeCertificate(inst.graph.n, Fraction(k * (params.d1 - 1)), {"cliques": k * (params.d1 - 1)})
    assert cert.holds, cert
    return inst, LiftChain(source, inst, steps), cert


def psaks_mod_clique_cover(
    inst: Instance, k: int | None = None, q: int | None = None, params: AlphaParams | None = None
):
    params = params or AlphaParams.of(2)
    source = inst
    inst, steps = _prepare(inst, ("cliquecover",))
    k = len(source.modulator) if k is None else k
    q = len(source.cover) if q is None else q
    inst = _collapse_cover(inst, params.d1, steps)
    cert = SizeCertificate(
        inst.graph.n, Fraction(k + q * (params.d1 - 1)), {"modulator": k, "cliques": q * (params.d1 - 1)}
    )
    assert cert.holds, cert
    return inst, LiftChain(source, inst, steps), cert


@dataclass
class ClusterKernelCtx:
    f0: frozenset[int]
    f1: frozenset[int]
    t: int
    cliques: list[frozenset[int]]
    cover_t: frozenset[int]
    s1: frozenset[int] = frozenset()
    a0: frozenset[int] = frozenset()
    b0: frozenset[int] = frozenset()


def cluster_context(inst: Instance, k: int) -> ClusterKernelCtx:
    g = inst.graph
    s = inst.modulator
    rest = sorted(inst.rest())
    comps = components(g, rest)
    f0 = frozenset(v for c in comps if len(c) == 1 for v in c)
    cliques = [c for c in comps if len(c) >= 2]
    f1 = frozenset().union(*cliques) if cliques else frozenset()
    t_set = set(s)
    for c in cliques:
        x = min(c)
        for cand in sorted(c):
            if g.neighborhood(c - {cand}) & s:
                x = cand
                break
        t_set |= c - {x}
    if count_components(g) == 1:
        cover_t = connect_greedily(g, t_set)
    else:
        cover_t = frozenset(t_set)
    s1 = frozenset(x for x in s if len(g.neighbors(x) & f0) >= 2 * k)
    a0 = frozenset(v for v in f0 if g.neighbors(v) <= s1)
    return ClusterKernelCtx(f0, f1, len(cliques), cliques, cover_t, s1, a0, f0 - a0)


def constant_instance() -> Instance:
    return Instance(Graph(2, [(0, 1)]), frozenset([0]), "cluster")


def psaks_cluster(
    inst: Instance,
    k: int | None = None,
    params: AlphaParams | None = None,
    _kinds: Sequence[str] = ("cluster",),
    _clique_cap: int | None = None,
):
    params = params or AlphaParams.of(2)
    source = inst
    inst, steps = _prepare(inst, _kinds)
    k = len(source.modulator) if k is None else k
    ctx = cluster_context(inst, k)
    if ctx.t * params.eps >= 2 * k:
        g = inst.graph
        target = constant_instance()
        if inst.kind == "degree1":
            target = Instance(target.graph, target.modulator, "degree1")
        assert is_connected_vertex_cover(g, ctx.cover_t)
        assert len(ctx.cover_t) < 2 * k + sum(len(c) - 1 for c in ctx.cliques) or k == 0
        steps.append(LiftStep("constant", [], g.n, 2, {"t": ctx.t}, ctx.cover_t, inst, target))
        cert = SizeCertificate(2, Fraction(2), {"constant": 2})
        return target, LiftChain(source, target, steps), cert
    d1, d2 = params.d1, params.d2
    while True:
        # ids shift after every collapse, so the clique list is recomputed each time
        big = [c for c in cluster_context(inst, k).cliques if len(c) >= d1]
        if not big:
            break
        inst, step = rule_collapse_clique(inst, min(big, key=min), d=d1)
        steps.append(step)
    guard = 0
    while True:
        guard += 1
        assert guard <= 4 * (inst.graph.n + 10) ** 2, "rules failed to terminate"
        g = inst.graph
        ctx = cluster_context(inst, k)
        cands = sorted(u for u in ctx.a0 if g.degree(u) >= d2)
        if cands:
            inst, step = rule_high_degree(inst, cands[0], k, d2, ctx.cover_t)
            steps.append(step)
            continue
        twins = twin_candidates(ctx.a0, g, 2 * k)
        if twins:
            x, others = twins[0]
            inst, step = rule_false_twins(inst, x, others, 2 * k, ctx.cover_t)
            steps.append(step)
            continue
        break
    cert = cluster_certificate(inst.graph.n, k, params, _clique_cap)
    assert cert.holds, cert
    return inst, LiftChain(source, inst, steps), cert


def psaks_degree1(inst: Instance, k: int | None = None, params: AlphaParams | None = None):
    return psaks_cluster(inst, k, params, _kinds=("degree1",), _clique_cap=2)
