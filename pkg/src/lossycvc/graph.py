"""Immutable simple graphs, DIMACS I/O, class recognition and small transformations.

Vertices are dense integers ``0..n-1``.  Every transformation returns a new
graph together with the vertex-id mapping it used; nothing mutates in place.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

KINDS = ("split", "clique", "cluster", "degree1", "chordal", "cliquecover")


class GraphFormatError(ValueError):
    """Raised for malformed DIMACS, modulator or cover input."""


class KindMismatch(ValueError):
    """Raised when ``G - S`` is not in the class an instance claims."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(a) for a in adj)
        self._m = sum(len(a) for a in adj) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adjacency), ((u, v) for u, nb in enumerate(adjacency) for v in nb if u < v))

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v

    def neighborhood(self, vs: Iterable[int]) -> frozenset[int]:
        """Open neighbourhood of a vertex set."""
        vs = frozenset(vs)
        out: set[int] = set()
        for v in vs:
            out |= self._adj[v]
        return frozenset(out - vs)

    def masks(self) -> list[int]:
        """Adjacency as bitmasks (bit ``u`` of ``masks()[v]`` set iff ``uv`` is an edge)."""
        res = []
        for v in range(self.n):
            b = 0
            for u in self._adj[v]:
                b |= 1 << u
            res.append(b)
        return res

    def induced(self, vs: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled in increasing old-id order; returns ``(graph, old_of_new)``."""
        keep = sorted(set(vs))
        new_of_old = {v: i for i, v in enumerate(keep)}
        edges = [
            (new_of_old[u], new_of_old[v])
            for u in keep
            for v in self._adj[u]
            if u < v and v in new_of_old
        ]
        return Graph(len(keep), edges), keep

    def delete(self, vs: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(vs)
        return self.induced(v for v in range(self.n) if v not in gone)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- predicates


def is_independent(g: Graph, vs: Iterable[int]) -> bool:
    vs = set(vs)
    return all(not (g.neighbors(v) & vs) for v in vs)


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    vs = list(set(vs))
    return all(vs[j] in g.neighbors(vs[i]) for i in range(len(vs)) for j in range(i + 1, len(vs)))


def is_vertex_cover(g: Graph, vs: Iterable[int]) -> bool:
    vs = set(vs)
    return all(u in vs or v in vs for u, v in g.edges())


def is_connected_set(g: Graph, vs: Iterable[int]) -> bool:
    """``g[vs]`` connected; the empty set counts as connected."""
    vs = set(vs)
    if not vs:
        return True
    start = min(vs)
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in g.neighbors(v):
            if u in vs and u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(vs)


def is_connected_vertex_cover(g: Graph, vs: Iterable[int]) -> bool:
    vs = set(vs)
    return is_vertex_cover(g, vs) and is_connected_set(g, vs)


def has_connected_vertex_cover(g: Graph) -> bool:
    """False exactly when the edges of ``g`` live in two or more components."""
    with_edges = [c for c in components(g) if len(c) > 1]
    return len(with_edges) <= 1


# ---------------------------------------------------------------- structure


def components(g: Graph, restrict: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected components of ``g[restrict]`` ordered by minimum vertex id."""
    allowed = set(range(g.n)) if restrict is None else set(restrict)
    seen: set[int] = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        todo = deque([s])
        while todo:
            v = todo.popleft()
            for u in g.neighbors(v):
                if u in allowed and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    todo.append(u)
        out.append(frozenset(comp))
    return out


def count_components(g: Graph, restrict: Iterable[int] | None = None) -> int:
    return len(components(g, restrict))


def contract_components(g: Graph, x: Iterable[int]) -> tuple[Graph, dict[int, frozenset[int]]]:
    """Contract every component of ``g[x]`` to a single vertex.

    Super-vertices come first (ordered by minimum member), then the vertices
    outside ``x`` in increasing id.  The returned mapping sends every new id
    to the set of original vertices it stands for.
    """
    x = set(x)
    comps = components(g, x)
    rest = [v for v in range(g.n) if v not in x]
    members: dict[int, frozenset[int]] = {}
    new_of_old: dict[int, int] = {}
    for i, c in enumerate(comps):
        members[i] = c
        for v in c:
            new_of_old[v] = i
    for j, v in enumerate(rest, start=len(comps)):
        members[j] = frozenset([v])
        new_of_old[v] = j
    edges = set()
    for u, v in g.edges():
        a, b = new_of_old[u], new_of_old[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph(len(members), sorted(edges)), members


def false_twins_of(g: Graph, v: int) -> frozenset[int]:
    nv = g.neighbors(v)
    return frozenset(u for u in range(g.n) if u != v and u not in nv and g.neighbors(u) == nv)


def remove_isolated(g: Graph) -> tuple[Graph, frozenset[int], list[int]]:
    """Drop degree-0 vertices; returns ``(graph, removed, old_of_new)``."""
    removed = frozenset(v for v in range(g.n) if g.degree(v) == 0)
    h, old_of_new = g.delete(removed)
    return h, removed, old_of_new


@dataclass(frozen=True)
class SplitPartition:
    clique: frozenset[int]
    independent: frozenset[int]


@dataclass(frozen=True)
class Classification:
    is_split: SplitPartition | None
    is_cluster: bool
    is_chordal: tuple[int, ...] | None  # perfect elimination order
    max_degree: int


def split_partition(g: Graph) -> SplitPartition | None:
    """Hammer-Simeone degree-sequence test, then a verification pass.

    Vertices are ranked by degree (desc), ties by id; the top ``m`` vertices
    form the clique side where ``m`` is the largest index with ``d_m >= m-1``.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    m = 0
    for i, d in enumerate(degs, start=1):
        if d >= i - 1:
            m = i
    if sum(degs[:m]) != m * (m - 1) + sum(degs[m:]):
        return None
    clique = frozenset(order[:m])
    indep = frozenset(order[m:])
    if not (is_clique(g, clique) and is_independent(g, indep)):
        return None
    return SplitPartition(clique, indep)


def is_cluster(g: Graph) -> bool:
    return all(is_clique(g, c) for c in components(g))


def max_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum-cardinality search (ties broken by smallest id)."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        order.append(best)
        for u in g.neighbors(best):
            if not visited[u]:
                weight[u] += 1
    return order


def is_perfect_elimination_order(g: Graph, peo: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        if not set(later) - {parent} <= g.neighbors(parent):
            return False
    return True


def perfect_elimination_order(g: Graph) -> tuple[int, ...] | None:
    peo = tuple(reversed(max_cardinality_search(g)))
    return peo if is_perfect_elimination_order(g, peo) else None


def classify_graph(g: Graph) -> Classification:
    return Classification(
        is_split=split_partition(g),
        is_cluster=is_cluster(g),
        is_chordal=perfect_elimination_order(g),
        max_degree=max((g.degree(v) for v in range(g.n)), default=0),
    )


# ---------------------------------------------------------------- instances


@dataclass(frozen=True)
class Instance:
    """A graph with a modulator ``S`` whose removal lands in the class ``kind``."""

    graph: Graph
    modulator: frozenset[int] = field(default_factory=frozenset)
    kind: str = "split"
    cover: tuple[frozenset[int], ...] | None = None

    def rest(self) -> frozenset[int]:
        return frozenset(v for v in range(self.graph.n) if v not in self.modulator)


def in_class(g: Graph, kind: str, cover: Sequence[Iterable[int]] | None = None) -> bool:
    """Membership of ``g`` in the class named by ``kind``."""
    if kind == "split":
        return split_partition(g) is not None
    if kind == "clique":
        return is_clique(g, range(g.n))
    if kind == "cluster":
        return is_cluster(g)
    if kind == "degree1":
        return all(g.degree(v) <= 1 for v in range(g.n))
    if kind == "degree2":
        return all(g.degree(v) <= 2 for v in range(g.n))
    if kind == "chordal":
        return perfect_elimination_order(g) is not None
    if kind == "cliquecover":
        return cover is not None and is_clique_cover(g, cover)
    raise ValueError(f"unknown kind {kind!r}")


def is_clique_cover(g: Graph, parts: Sequence[Iterable[int]]) -> bool:
    seen: set[int] = set()
    for p in parts:
        p = set(p)
        if not p or p & seen or not is_clique(g, p):
            return False
        seen |= p
    return seen == set(range(g.n))


def check_instance(inst: Instance) -> Instance:
    """Validate an instance; raises :class:`KindMismatch` on failure."""
    g = inst.graph
    if not inst.modulator <= frozenset(range(g.n)):
        raise KindMismatch("modulator contains vertices outside the graph")
    rest = sorted(inst.rest())
    h, old_of_new = g.induced(rest)
    cover = None
    if inst.kind == "cliquecover":
        if inst.cover is None:
            raise KindMismatch("cliquecover instance without a cover")
        new_of_old = {v: i for i, v in enumerate(old_of_new)}
        try:
            cover = [{new_of_old[v] for v in part} for part in inst.cover]
        except KeyError:
            raise KindMismatch("cover contains modulator vertices") from None
    if not in_class(h, inst.kind, cover):
        raise KindMismatch(f"G - S is not {inst.kind}")
    return inst


# ---------------------------------------------------------------- I/O


def parse_dimacs(text: str | bytes) -> Graph:
    """Parse ``p edge n m`` / ``e u v`` input (1-indexed) into a :class:`Graph`."""
    if isinstance(text, bytes):
        text = text.decode()
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None or len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: malformed header {raw!r}")
            try:
                n = int(tok[2])
                int(tok[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header {raw!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
        elif tok[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(tok) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge {raw!r}")
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed edge {raw!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {lineno}: vertex out of range in {raw!r}")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop {raw!r}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {raw!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    return Graph(n, edges)


def format_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _ids(tokens: Iterable[str], n: int | None, lineno: int) -> list[int]:
    out = []
    for t in tokens:
        try:
            v = int(t)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: not a vertex id: {t!r}") from None
        if v < 1 or (n is not None and v > n):
            raise GraphFormatError(f"line {lineno}: vertex {v} out of range")
        out.append(v - 1)
    return out


def parse_vertex_list(text: str, n: int | None = None) -> frozenset[int]:
    """Modulator / solution file: 1-indexed ids, whitespace separated, ``c`` comments allowed."""
    out: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        out.update(_ids(line.split(), n, lineno))
    return frozenset(out)


def format_vertex_list(vs: Iterable[int]) -> str:
    return "".join(f"{v + 1}\n" for v in sorted(vs))


def parse_cover(text: str, n: int | None = None) -> tuple[frozenset[int], ...]:
    parts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts.append(frozenset(_ids(line.split(), n, lineno)))
    return tuple(parts)


def format_cover(parts: Iterable[Iterable[int]]) -> str:
    return "".join(" ".join(str(v + 1) for v in sorted(p)) + "\n" for p in parts)


def relabel(vs: Iterable[int], mapping: Mapping[int, int] | Sequence[int]) -> frozenset[int]:
    return frozenset(mapping[v] for v in vs)
