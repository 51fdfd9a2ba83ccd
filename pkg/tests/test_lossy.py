import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import (
    complete,
    exact_solution,
    graph,
    high_degree_cluster_instance,
    high_degree_split_instance,
    k4_pendant,
    pad_solution,
    path,
    star,
)
from lossycvc.checks import random_cluster_instance, random_split_instance, small_graphs
from lossycvc.graph import Graph, Instance, KindMismatch, in_class, is_connected_vertex_cover
from lossycvc.lossy import (
    NEG_INF,
    POS_INF,
    AlphaParams,
    ChainMismatch,
    CvcValue,
    LiftChain,
    cluster_context,
    cvc_value,
    high_degree_candidates,
    lift,
    partition_bir,
    psaks_clique_cover,
    psaks_clique_deletion,
    psaks_cluster,
    psaks_degree1,
    psaks_mod_clique_cover,
    psaks_split,
    ratio,
    rule_collapse_clique,
    rule_false_twins,
    split_certificate,
    twin_candidates,
    two_approx_cvc,
)
from lossycvc.oracle import min_cvc_bruteforce
from lossycvc.solvers import kernelize

ALPHAS = [Fraction(6, 5), Fraction(3, 2), Fraction(2), Fraction(3)]


def test_threshold_identities():
    assert (AlphaParams.of(2).d1, AlphaParams.of(2).d2) == (3, 2)
    assert (AlphaParams.of(1.5).d1, AlphaParams.of(1.5).d2) == (4, 3)
    assert (AlphaParams.of(1.2).d1, AlphaParams.of(1.2).d2) == (7, 6)
    with pytest.raises(ValueError):
        AlphaParams.of(1)


def test_cvc_value_cases():
    inst = Instance(path(4), frozenset({1, 2}), "split")
    assert cvc_value(inst, 1, {1, 2}) == NEG_INF
    assert cvc_value(inst, 2, {1}) == POS_INF
    assert cvc_value(inst, 2, {1, 2}) == CvcValue.finite(2)
    c5 = Instance(Graph(5, [(i, (i + 1) % 5) for i in range(5)]), frozenset({0}), "split")
    assert cvc_value(c5, 1, {0, 1, 2, 3}) == CvcValue.finite(4)
    assert cvc_value(Instance(path(4), frozenset(), "cluster"), 3, {1, 2}) == NEG_INF


def test_ratio_conventions():
    assert ratio(0, 0) == 1
    assert ratio(3, 2) == Fraction(3, 2)
    assert ratio(None, 2) == float("inf")


def test_two_approx_examples():
    assert two_approx_cvc(Instance(star(3), frozenset({0}), "split"), []) == {0}
    t = two_approx_cvc(Instance(path(4), frozenset({1}), "split"), {2, 3})
    assert t == {1, 2, 3}


def test_collapse_clique_k4_pendant():
    inst = Instance(k4_pendant(), frozenset({4}), "split")
    reduced, step = rule_collapse_clique(inst, {0, 1, 2, 3}, d=3)
    assert reduced.graph == graph(2, (0, 1))
    u_c = step.params["u_c"]
    assert step.lift({u_c}) == {0, 1, 2, 3}
    lifted = step.lift({0})  # the pendant only
    assert len(lifted) == 4 and 3 in lifted
    assert is_connected_vertex_cover(inst.graph, lifted)
    assert Fraction(len(step.lift({u_c})), 3) <= 2
    with pytest.raises(ValueError):
        rule_collapse_clique(inst, {0, 1}, d=3)


def test_clique_deletion_kernel_examples():
    reduced, chain, cert = psaks_clique_deletion(Instance(k4_pendant(), frozenset({4}), "clique"))
    assert reduced.graph.n == 2 and cert.holds
    small = Instance(complete(2), frozenset(), "clique")
    reduced, chain, _ = psaks_clique_deletion(small)
    assert reduced.graph == small.graph and chain.steps == []
    reduced, _, cert = psaks_clique_deletion(Instance(complete(6), frozenset(), "clique"))
    assert reduced.graph.n <= AlphaParams.of(2).d1


def test_clique_cover_kernel_examples():
    k5 = Instance(complete(5), frozenset(), "cliquecover", (frozenset(range(5)),))
    assert psaks_clique_cover(k5)[0].graph.n <= 2
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    edges += [(a + 5, b + 5) for a, b in edges] + [(4, 5)]
    two = Instance(Graph(10, edges), frozenset(), "cliquecover", (frozenset(range(5)), frozenset(range(5, 10))))
    reduced, chain, cert = psaks_clique_cover(two)
    assert reduced.graph.n <= 4 and cert.holds
    sol = exact_solution(reduced)
    assert len(lift(chain, sol)) <= 2 * len(min_cvc_bruteforce(two.graph))
    with pytest.raises(KindMismatch):
        psaks_clique_cover(Instance(complete(3), frozenset({0}), "cliquecover", (frozenset({1, 2}),)))


def test_mod_clique_cover_kernel_examples():
    hub_edges = [(0, v) for v in range(1, 9)] + [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
    hub_edges += [(a, b) for a in range(5, 9) for b in range(a + 1, 9)]
    inst = Instance(Graph(9, hub_edges), frozenset({0}), "cliquecover", (frozenset(range(1, 5)), frozenset(range(5, 9))))
    reduced, chain, cert = psaks_mod_clique_cover(inst)
    assert cert.holds and reduced.graph.n <= 1 + 2 * 2
    assert len(lift(chain, exact_solution(reduced))) <= 2 * len(min_cvc_bruteforce(inst.graph))


def test_cluster_constant_branch():
    # a hub over six disjoint edges: t = 6 >= 2k / eps
    edges = [(0, v) for v in range(1, 13)] + [(2 * i + 1, 2 * i + 2) for i in range(6)]
    inst = Instance(Graph(13, edges), frozenset({0}), "cluster")
    reduced, chain, cert = psaks_cluster(inst, params=AlphaParams.of(2))
    assert [s.rule for s in chain.steps] == ["constant"]
    assert reduced.graph.n == 2 and cert.holds
    lifted = lift(chain, {0})
    opt = len(min_cvc_bruteforce(inst.graph))
    assert is_connected_vertex_cover(inst.graph, lifted)
    assert len(lifted) <= 2 * opt


def test_cluster_collapses_large_component():
    edges = [(0, 1)] + [(a, b) for a in range(1, 7) for b in range(a + 1, 7)] + [(0, 7), (7, 8)]
    inst = Instance(Graph(9, edges), frozenset({0}), "cluster")
    # two components and eps = 1/2 keep t * eps below 2k, so no constant shortcut
    reduced, chain, cert = psaks_cluster(inst, params=AlphaParams.of(Fraction(3, 2)))
    assert "collapse_clique" in [s.rule for s in chain.steps] and cert.holds
    lifted = lift(chain, exact_solution(reduced))
    assert len(lifted) <= Fraction(3, 2) * len(min_cvc_bruteforce(inst.graph))


@pytest.mark.parametrize("make, driver", [(high_degree_split_instance, psaks_split), (high_degree_cluster_instance, psaks_cluster)])
@pytest.mark.parametrize("alpha", [Fraction(2), Fraction(3)])
def test_high_degree_and_twin_rules_fire_and_stay_safe(make, driver, alpha):
    inst = make()
    reduced, chain, cert = driver(inst, params=AlphaParams.of(alpha))
    rules = [s.rule for s in chain.steps]
    assert "high_degree" in rules and "false_twin" in rules
    assert cert.holds
    for step in chain.steps:
        assert len(step.after.modulator) <= len(step.before.modulator)
    opt = len(min_cvc_bruteforce(inst.graph))
    lifted = lift(chain, exact_solution(reduced))
    assert is_connected_vertex_cover(inst.graph, lifted)
    assert len(lifted) <= alpha * opt


def test_high_degree_lift_without_w_uses_fallback():
    reduced, chain, _ = psaks_split(high_degree_split_instance(), params=AlphaParams.of(2))
    step = next(s for s in chain.steps if s.rule == "high_degree")
    pendants = set(step.params["pendants"])
    assert step.lift(pendants | set(range(step.n_after)) - {step.params["w"]}) == step.fallback


def test_false_twin_rule_never_raises_opt():
    for m in range(3, 8):
        edges = [(v, w) for v in range(2, 2 + m) for w in (0, 1)]
        g = Graph(2 + m, edges)
        inst = Instance(g, frozenset({0, 1}), "cluster")
        twins = list(range(3, 2 + m))
        reduced, step = rule_false_twins(inst, 2, twins, len(twins), frozenset({0, 1, 2}))
        assert len(min_cvc_bruteforce(reduced.graph)) <= len(min_cvc_bruteforce(g))
        small = min_cvc_bruteforce(reduced.graph)
        assert is_connected_vertex_cover(g, step.lift(small))


def test_rules_are_exhausted_after_each_driver():
    rng = random.Random(2)
    for _ in range(30):
        k = rng.randint(1, 3)
        inst = random_split_instance(rng, k, rng.randint(1, 6), rng.randint(3, 14))
        reduced, _, _ = psaks_split(inst)
        d = AlphaParams.of(2).d1
        assert high_degree_candidates(reduced, k, d) == []
        _, i_b, _ = partition_bir(reduced.graph, k, d)
        assert twin_candidates(i_b - reduced.modulator, reduced.graph, 2 * k + d) == []
        inst = random_cluster_instance(rng, k, [rng.randint(1, 5) for _ in range(rng.randint(1, 4))])
        reduced, chain, _ = psaks_cluster(inst)
        if chain.steps and chain.steps[-1].rule == "constant":
            continue
        ctx = cluster_context(reduced, k)
        assert all(len(c) < 3 for c in ctx.cliques)
        assert not [u for u in ctx.a0 if reduced.graph.degree(u) >= 2]
        assert twin_candidates(ctx.a0, reduced.graph, 2 * k) == []


def test_split_certificate_terms():
    cert = split_certificate(10, 1, 3)
    assert cert.terms["ib_outside"] == 5 * (1 + 4 + 6)
    assert cert.holds and cert.as_dict()["holds"]


def test_chain_json_round_trip_and_mismatch():
    inst = high_degree_split_instance()
    reduced, chain, _ = psaks_split(inst)
    again = LiftChain.from_json(chain.to_json())
    sol = exact_solution(reduced)
    assert lift(again, sol) == lift(chain, sol)
    with pytest.raises(ChainMismatch):
        lift(chain, {reduced.graph.n + 5})
    with pytest.raises(ValueError):
        LiftChain.from_json('{"schema": 99}')
    empty = LiftChain(Instance(path(3), frozenset({1}), "split"), Instance(path(3), frozenset({1}), "split"), [])
    with pytest.raises(ChainMismatch):
        lift(empty, {0})
    assert lift(empty, {1}) == {1}


def test_infeasible_reduced_solution_falls_back():
    reduced, chain, _ = psaks_split(high_degree_split_instance())
    lifted = lift(chain, set())
    assert is_connected_vertex_cover(chain.source.graph, lifted)


def test_isolated_vertices_are_dropped_and_restored():
    g = Graph(5, [(0, 1), (1, 2)])
    inst = Instance(g, frozenset({1}), "cluster")
    reduced, chain, _ = psaks_cluster(inst)
    assert chain.steps[0].rule == "drop_isolated"
    assert lift(chain, exact_solution(reduced)) == {1}
    with pytest.raises(ValueError):
        psaks_cluster(Instance(graph(4, (0, 1), (2, 3)), frozenset(), "cluster"))


def _step_strictness(chain, alpha, rng, c):
    for step in chain.steps:
        if step.before is None or step.rule == "drop_isolated":
            continue
        opt_before = len(exact_solution(step.before))
        base = exact_solution(step.after)
        opt_after = len(base)
        padded = pad_solution(step.after.graph, base, c, rng)
        lifted = step.lift(padded)
        assert is_connected_vertex_cover(step.before.graph, lifted)
        assert ratio(len(lifted), opt_before) <= max(ratio(len(padded), opt_after), alpha)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(ALPHAS), st.sampled_from([Fraction(3, 2), Fraction(2)]))
def test_strictness_per_step_and_end_to_end(seed, alpha, c):
    rng = random.Random(seed)
    k = rng.randint(1, 2)
    if rng.random() < 0.5:
        inst, driver = random_split_instance(rng, k, rng.randint(1, 6), rng.randint(2, 6)), psaks_split
    else:
        inst, driver = random_cluster_instance(rng, k, [rng.randint(1, 5) for _ in range(rng.randint(1, 3))]), psaks_cluster
    reduced, chain, _ = driver(inst, params=AlphaParams.of(alpha))
    _step_strictness(chain, alpha, rng, c)
    base = exact_solution(reduced)
    padded = pad_solution(reduced.graph, base, c, rng)
    lifted = lift(chain, padded)
    opt = len(exact_solution(inst))
    assert ratio(len(lifted), opt) <= max(ratio(len(padded), len(base)), alpha)


@pytest.mark.parametrize("param, kind", [("split", "split"), ("clique", "clique"), ("cluster", "cluster"), ("degree1", "degree1")])
def test_alpha_guarantee_on_small_graphs(param, kind):
    for g in small_graphs(5, nmin=2):
        opt = len(min_cvc_bruteforce(g))
        for s in (frozenset(), frozenset({0}), frozenset({0, 1})):
            h, _ = g.induced(sorted(set(range(g.n)) - s))
            if not in_class(h, kind):
                continue
            for alpha in ALPHAS:
                reduced, chain, cert = kernelize(Instance(g, s, kind), alpha, param)
                lifted = lift(chain, exact_solution(reduced))
                assert cert.holds and is_connected_vertex_cover(g, lifted)
                assert len(lifted) <= alpha * opt


def test_degree1_kernel_on_matched_edges():
    edges = [(0, v) for v in range(1, 7)] + [(1, 2), (3, 4), (5, 6)]
    inst = Instance(Graph(7, edges), frozenset({0}), "degree1")
    reduced, chain, cert = psaks_degree1(inst, params=AlphaParams.of(3))
    assert cert.holds
    assert len(lift(chain, exact_solution(reduced))) <= 3 * len(min_cvc_bruteforce(inst.graph))
