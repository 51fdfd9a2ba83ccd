"""Tree decompositions for chordal/degree-2 plus modulator, and a CVC dynamic program over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import (
    Graph,
    Instance,
    KindMismatch,
    check_instance,
    components,
    perfect_elimination_order,
)


@dataclass
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    parent: dict[int, int | None]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {t: [] for t in self.bags}
        for t, p in self.parent.items():
            if p is not None:
                out[p].append(t)
        for kids in out.values():
            kids.sort()
        return out

    def roots(self) -> list[int]:
        return sorted(t for t, p in self.parent.items() if p is None)

    def relabel(self, old_of_new: list[int]) -> "TreeDecomposition":
        return TreeDecomposition(
            {t: frozenset(old_of_new[v] for v in b) for t, b in self.bags.items()}, dict(self.parent)
        )


class InvalidDecomposition(ValueError):
    pass


def verify(td: TreeDecomposition, g: Graph) -> bool:
    """Vertex coverage, edge coverage and connected occurrence (on a single tree)."""
    if len(td.roots()) != 1:
        return False
    seen = set().union(*td.bags.values()) if td.bags else set()
    if seen != set(range(g.n)):
        return False
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags.values()):
            return False
    for v in range(g.n):
        holders = {t for t, b in td.bags.items() if v in b}
        # the occurrence set is connected iff exactly one holder has its parent outside it
        tops = [t for t in holders if td.parent[t] not in holders]
        if len(tops) != 1:
            return False
    return True


def _merge_nested(bags: dict[int, frozenset[int]], parent: dict[int, int | None]) -> None:
    """Contract tree edges whose bags are nested, keeping the larger bag."""
    changed = True
    while changed:
        changed = False
        for t in sorted(bags):
            p = parent[t]
            if p is None:
                continue
            if bags[t] <= bags[p]:
                keep, drop = p, t
            elif bags[p] <= bags[t]:
                bags[p] = bags[t]  # node p survives and takes over the larger bag
                keep, drop = p, t
            else:
                continue
            for c, pc in parent.items():
                if pc == drop:
                    parent[c] = keep
            del bags[drop]
            del parent[drop]
            changed = True
            break


def _chain_roots(parent: dict[int, int | None]) -> None:
    roots = sorted(t for t, p in parent.items() if p is None)
    for r in roots[1:]:
        parent[r] = roots[0]


def clique_tree(g: Graph) -> TreeDecomposition:
    """Decomposition of a chordal graph whose bags are its maximal cliques."""
    peo = perfect_elimination_order(g)
    if peo is None:
        raise KindMismatch("graph is not chordal")
    if g.n == 0:
        return TreeDecomposition({0: frozenset()}, {0: None})
    pos = {v: i for i, v in enumerate(peo)}
    bags: dict[int, frozenset[int]] = {}
    parent: dict[int, int | None] = {}
    for v in peo:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        bags[v] = frozenset(later) | {v}
        parent[v] = min(later, key=pos.__getitem__) if later else None
    _merge_nested(bags, parent)
    _chain_roots(parent)
    return TreeDecomposition(bags, parent)


def augment_with_modulator(td: TreeDecomposition, s: Iterable[int]) -> TreeDecomposition:
    s = frozenset(s)
    return TreeDecomposition({t: b | s for t, b in td.bags.items()}, dict(td.parent))


def td_from_degree2_modulator(g: Graph, s: Iterable[int]) -> TreeDecomposition:
    """Path/cycle decompositions of ``G - S`` strung together, with ``S`` in every bag."""
    s = frozenset(s)
    rest = [v for v in range(g.n) if v not in s]
    if any(len(g.neighbors(v) - s) > 2 for v in rest):
        raise KindMismatch("G - S has a vertex of degree above 2")
    sequence: list[frozenset[int]] = []
    for comp in components(g, rest):
        order = _walk(g, comp, s)
        if len(order) == 1:
            sequence.append(frozenset(order))
        elif len(comp) >= 3 and g.has_edge(order[0], order[-1]):
            first = order[0]
            for i in range(1, len(order) - 1):
                sequence.append(frozenset((first, order[i], order[i + 1])))
        else:
            for a, b in zip(order, order[1:]):
                sequence.append(frozenset((a, b)))
    if not sequence:
        sequence.append(frozenset())
    bags = {i: b | s for i, b in enumerate(sequence)}
    parent = {i: (i - 1 if i else None) for i in range(len(sequence))}
    return TreeDecomposition(bags, parent)


def _walk(g: Graph, comp: frozenset[int], s: frozenset[int]) -> list[int]:
    """Vertices of a path or cycle component in traversal order."""
    ends = [v for v in comp if len((g.neighbors(v) - s) & comp) <= 1]
    start = min(ends) if ends else min(comp)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = sorted(((g.neighbors(cur) - s) & comp) - {prev} - set(order))
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def chordal_decomposition(g: Graph, s: Iterable[int]) -> TreeDecomposition:
    """Clique tree of ``G - S`` (in original ids) with ``S`` added to every bag."""
    s = frozenset(s)
    rest = [v for v in range(g.n) if v not in s]
    h, old_of_new = g.induced(rest)
    return augment_with_modulator(clique_tree(h).relabel(old_of_new), s)


# ---------------------------------------------------------------- nice decompositions


@dataclass
class NiceNode:
    kind: str  # leaf | introduce | forget | join
    bag: frozenset[int]
    vertex: int | None = None
    children: list[int] = field(default_factory=list)


def make_nice(td: TreeDecomposition) -> list[NiceNode]:
    """Children-before-parents list of nice nodes; the last node is the empty root."""
    kids = td.children()
    roots = td.roots()
    if len(roots) != 1:
        raise InvalidDecomposition("decomposition must be a single tree")
    nodes: list[NiceNode] = []

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def chain(idx: int, src: frozenset[int], dst: frozenset[int]) -> int:
        bag = src
        for v in sorted(src - dst):
            bag = bag - {v}
            idx = add(NiceNode("forget", bag, v, [idx]))
        for v in sorted(dst - src):
            bag = bag | {v}
            idx = add(NiceNode("introduce", bag, v, [idx]))
        return idx

    # iterative post-order over the original tree
    built: dict[int, int] = {}
    stack = [(roots[0], False)]
    while stack:
        t, done = stack.pop()
        if not done:
            stack.append((t, True))
            stack.extend((c, False) for c in reversed(kids[t]))
            continue
        bag = td.bags[t]
        branches = [chain(built[c], td.bags[c], bag) for c in kids[t]]
        if not branches:
            branches = [chain(add(NiceNode("leaf", frozenset())), frozenset(), bag)]
        cur = branches[0]
        for other in branches[1:]:
            cur = add(NiceNode("join", bag, None, [cur, other]))
        built[t] = cur
    chain(built[roots[0]], td.bags[roots[0]], frozenset())
    return nodes


# ---------------------------------------------------------------- the DP


def _canon(blocks: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted((b for b in blocks if b), key=min))


def _merge_partitions(p1, p2) -> tuple[frozenset[int], ...]:
    parent: dict[int, int] = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for block in list(p1) + list(p2):
        items = sorted(block)
        for v in items:
            parent.setdefault(v, v)
        for v in items[1:]:
            ra, rb = find(items[0]), find(v)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, set[int]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return _canon(frozenset(b) for b in groups.values())


def _better(a, b) -> bool:
    """Is entry ``a`` (cost, witness) preferable to ``b``?"""
    if b is None:
        return True
    return (a[0], sorted(a[1])) < (b[0], sorted(b[1]))


def cvc_dp(
    g: Graph,
    td: TreeDecomposition,
    ell: int | None = None,
    stats: dict | None = None,
) -> frozenset[int] | None:
    """Minimum connected vertex cover via states (solution trace on the bag, its connectivity partition)."""
    if not verify(td, g):
        raise InvalidDecomposition("not a tree decomposition of the graph")
    nodes = make_nice(td)
    tables: list[dict | None] = [None] * len(nodes)
    seen_edges = [0] * len(nodes)
    best = (0, frozenset()) if g.m == 0 else None
    sizes = []
    for i, node in enumerate(nodes):
        table: dict = {}

        def offer(key, entry):
            if _better(entry, table.get(key)):
                table[key] = entry

        if node.kind == "leaf":
            offer((frozenset(), ()), (0, frozenset()))
        elif node.kind == "introduce":
            c = node.children[0]
            v = node.vertex
            nbrs = g.neighbors(v) & nodes[c].bag
            seen_edges[i] = seen_edges[c] + len(nbrs)
            for (x, part), (cost, wit) in tables[c].items():
                if nbrs <= x:
                    offer((x, part), (cost, wit))
                touching = [b for b in part if b & nbrs]
                merged = frozenset({v}).union(*touching)
                new_part = _canon([b for b in part if not (b & nbrs)] + [merged])
                offer((x | {v}, new_part), (cost + 1, wit | {v}))
        elif node.kind == "forget":
            c = node.children[0]
            v = node.vertex
            seen_edges[i] = seen_edges[c]
            for (x, part), (cost, wit) in tables[c].items():
                if v not in x:
                    offer((x, part), (cost, wit))
                    continue
                block = next(b for b in part if v in b)
                if len(block) > 1:
                    new_part = _canon([b - {v} if b is block else b for b in part])
                    offer((x - {v}, new_part), (cost, wit))
                elif len(part) == 1 and seen_edges[i] == g.m:
                    # the only component just left the bag and every edge is accounted for
                    if _better((cost, wit), best):
                        best = (cost, wit)
        else:
            a, b = node.children
            inside = sum(1 for u, w in g.edges() if u in node.bag and w in node.bag)
            seen_edges[i] = seen_edges[a] + seen_edges[b] - inside
            by_x: dict = {}
            for (x, part), entry in tables[b].items():
                by_x.setdefault(x, []).append((part, entry))
            for (x, p1), (c1, w1) in tables[a].items():
                for p2, (c2, w2) in by_x.get(x, ()):
                    offer((x, _merge_partitions(p1, p2)), (c1 + c2 - len(x), w1 | w2))
        tables[i] = table
        sizes.append((len(node.bag), len(table)))
        for c in node.children:
            tables[c] = None
    if stats is not None:
        stats["table_sizes"] = sizes
        stats["nice_nodes"] = len(nodes)
    if best is None or (ell is not None and best[0] > ell):
        return None
    return frozenset(best[1])


def solve_chordal(inst: Instance, ell: int | None = None, stats: dict | None = None) -> frozenset[int] | None:
    """Decompose via the clique tree of ``G - S`` plus ``S``, then run :func:`cvc_dp`."""
    if inst.kind != "chordal":
        raise KindMismatch("solve_chordal needs a chordal-kind instance")
    check_instance(inst)
    return cvc_dp(inst.graph, chordal_decomposition(inst.graph, inst.modulator), ell, stats)


def solve_degree2(inst: Instance, ell: int | None = None, stats: dict | None = None) -> frozenset[int] | None:
    td = td_from_degree2_modulator(inst.graph, inst.modulator)
    return cvc_dp(inst.graph, td, ell, stats)
