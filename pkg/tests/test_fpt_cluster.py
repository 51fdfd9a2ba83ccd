import random

import pytest

from conftest import complete, graph, path, star, valid_modulators
from lossycvc.checks import leaf_bound_violations, random_cluster_instance, small_graphs
from lossycvc.fpt_cluster import (
    apply_reductions,
    branch_edge,
    branch_triangle,
    finish_leaf,
    init_guess,
    preprocess_check,
    residual_optimum,
    solve_cluster,
    solve_degree1,
)
from lossycvc.graph import Graph, Instance, KindMismatch, count_components, is_connected_vertex_cover
from lossycvc.oracle import min_cvc_bruteforce


def triangle_inst():
    return Instance(complete(3), frozenset({0}), "cluster")


def test_init_guess_examples():
    st = init_guess(triangle_inst(), {0}, 2)
    assert st.x == {0} and st.f == frozenset() and st.ell == 1
    st = init_guess(triangle_inst(), set(), 2)
    assert st.f == {1, 2} and st.x == frozenset()
    adj = Instance(path(3), frozenset({0, 1}), "cluster")
    assert init_guess(adj, set(), 3) is None
    with pytest.raises(ValueError):
        init_guess(triangle_inst(), {1}, 2)


def test_preprocess_check_examples():
    # an H-edge with no neighbour in X prunes the guess
    g = Graph(5, [(0, 1), (0, 4), (4, 2), (2, 3)])
    st = init_guess(Instance(g, frozenset({0, 4}), "cluster"), {0}, 4)
    assert not preprocess_check(st)
    st = init_guess(Instance(star(2), frozenset({0}), "cluster"), {0}, 3)
    assert preprocess_check(st)


def test_reduction_and_branch_shapes():
    # three leaves of a K3 each touching a distinct modulator vertex, modulator linked by a hub
    g = Graph(7, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 6), (5, 6)])
    st = init_guess(Instance(g, frozenset({3, 4, 5, 6}), "cluster"), {3, 4, 5}, 10)
    st = apply_reductions(st)
    kids = branch_triangle(st)
    assert len(kids) == 3
    assert all(k.ell == st.ell - 2 and k.depth == 1 for k in kids)
    assert all(count_components(g, k.x) < count_components(g, st.x) for k in kids)


def test_branch_edge_shape():
    g = Graph(6, [(4, 5), (4, 0), (4, 1), (5, 2), (5, 3)])
    inst = Instance(g, frozenset({0, 1, 2, 3}), "degree1")
    st = apply_reductions(init_guess(inst, {0, 1, 2, 3}, 6))
    kids = branch_edge(st)
    assert len(kids) == 2
    assert all(count_components(g, k.x) < count_components(g, st.x) for k in kids)


def test_finish_leaf_examples():
    g = path(3)
    st = init_guess(Instance(g, frozenset({0, 2}), "cluster"), {0, 2}, 3)
    assert finish_leaf(st) == {0, 1, 2}
    st = init_guess(Instance(g, frozenset({1}), "cluster"), {1}, 1)
    assert finish_leaf(st) == {1}


def test_solve_cluster_examples():
    assert solve_cluster(triangle_inst(), 2)[0] == {0, 1}
    assert solve_cluster(Instance(star(4), frozenset({0}), "cluster"), 1)[0] == {0}
    bowtie = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    assert len(solve_cluster(Instance(bowtie, frozenset({0}), "cluster"), 3)[0]) == 3
    assert solve_cluster(triangle_inst(), 1)[0] is None
    with pytest.raises(KindMismatch):
        solve_cluster(Instance(path(4), frozenset(), "cluster"))


def test_solve_degree1_examples():
    assert len(solve_degree1(Instance(path(4), frozenset({1, 2}), "degree1"))[0]) == 2
    hub = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)])
    sol, _ = solve_degree1(Instance(hub, frozenset({0}), "degree1"))
    assert len(sol) == 3 and 0 in sol
    sol, stats = solve_degree1(Instance(star(3), frozenset({0}), "degree1"))
    assert sol == {0} and stats.branch_nodes <= 1


def test_edge_branching_can_fire_on_degree1_instances():
    # two modulator pairs, each hanging off one end of the lone H-edge
    g = Graph(6, [(4, 5), (4, 0), (4, 1), (5, 2), (5, 3)])
    sol, stats = solve_degree1(Instance(g, frozenset({0, 1, 2, 3}), "degree1"), prune=False)
    assert sol == {4, 5}
    assert stats.rule_counts.get("R6") == 1
    assert "R4" not in stats.rule_counts


@pytest.mark.parametrize("prune", [True, False])
def test_exact_on_small_graphs(prune):
    for g in small_graphs(6, nmin=2):
        opt = len(min_cvc_bruteforce(g))
        for kind, solver in (("cluster", solve_cluster), ("degree1", solve_degree1)):
            for s in valid_modulators(g, kind, max_size=3):
                sol, _ = solver(Instance(g, s, kind), prune=prune)
                assert len(sol) == opt and is_connected_vertex_cover(g, sol)


def test_reductions_preserve_optimum_along_the_search():
    """Every rule application keeps the residual optimum (oracle replay on n <= 7)."""
    broken = []

    def trace(rule, before, after):
        a, b = residual_optimum(before), residual_optimum(after)
        if a is not None and (b is None or b > a):
            # a rule may throw away solutions, but not all optimal ones of this branch
            broken.append((rule, a, b))

    rng = random.Random(3)
    for _ in range(30):
        inst = random_cluster_instance(rng, rng.randint(1, 3), [rng.randint(1, 3) for _ in range(3)])
        sol, _ = solve_cluster(inst, prune=False, trace=trace)
        assert len(sol) == len(min_cvc_bruteforce(inst.graph))
    assert not broken


def test_leaf_bound_holds_on_small_benign_instance():
    _, stats = solve_cluster(Instance(complete(3), frozenset({0}), "cluster"), prune=False)
    assert leaf_bound_violations(stats) == []
