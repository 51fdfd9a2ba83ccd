import pytest

from conftest import complete, cycle, graph, path, star
from lossycvc.checks import small_graphs
from lossycvc.graph import Graph, is_connected_vertex_cover
from lossycvc.oracle import (
    BudgetExceeded,
    OracleBudget,
    max_nonseparating_is_bruteforce,
    min_cvc_bruteforce,
    min_cvc_powerset,
    min_steiner_superset_bruteforce,
    min_vc_bruteforce,
    vc_component_sum,
)


def test_min_cvc_examples():
    assert len(min_cvc_bruteforce(cycle(4))) == 3
    assert min_cvc_bruteforce(star(4)) == {0}
    assert len(min_cvc_bruteforce(complete(4))) == 3
    assert min_cvc_bruteforce(Graph(3)) == frozenset()
    assert min_cvc_bruteforce(graph(4, (0, 1), (2, 3))) is None


def test_min_vc_examples():
    assert len(min_vc_bruteforce(cycle(4))) == 2
    assert len(min_vc_bruteforce(complete(4))) == 3
    assert len(min_vc_bruteforce(path(4))) == 2


def test_two_enumerations_agree_and_vc_bounds_cvc():
    for g in small_graphs(6):
        a, b = min_cvc_bruteforce(g), min_cvc_powerset(g)
        assert a == b
        assert is_connected_vertex_cover(g, a)
        assert len(min_vc_bruteforce(g)) <= len(a)


def test_vc_component_sum_examples():
    assert vc_component_sum(graph(2, (0, 1))) == (6, 6, True)
    assert vc_component_sum(complete(3)) == (8, 12, True)
    assert vc_component_sum(Graph(1)) == (3, 3, True)


def test_nonseparating_examples():
    assert not max_nonseparating_is_bruteforce(cycle(4), 2)
    assert max_nonseparating_is_bruteforce(cycle(4), 1)
    assert max_nonseparating_is_bruteforce(complete(3), 1)
    assert max_nonseparating_is_bruteforce(star(3), 3)


def test_steiner_superset_examples():
    assert min_steiner_superset_bruteforce(path(3), {1}) == {1}
    assert min_steiner_superset_bruteforce(path(5), {0, 4}) == set(range(5))
    assert min_steiner_superset_bruteforce(star(3), {1, 2, 3}) == {0, 1, 2, 3}
    assert min_steiner_superset_bruteforce(graph(4, (0, 1), (2, 3)), {0, 2}) is None


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        min_cvc_bruteforce(path(8), OracleBudget(max_vertices=6))
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=30)
