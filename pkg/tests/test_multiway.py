"""
Pruebas del corte multivía generalizado: filas del programa dinámico,
preprocesamiento y comparación con el oráculo y con la reducción a multicorte.
"""

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from cortes_arboles.config import settings
from cortes_arboles.core.exceptions import TooManyTerminalSetsError
from cortes_arboles.models import EstadoResultado, Modo, build_instance, verify_cut
from cortes_arboles.services.multiway_service import (
    MultiwayDPSolver,
    dp_leaf,
    dp_one_child,
    dp_two_children,
    expand_to_requests,
    preprocess,
    solve_gmwct_min_via_mct,
    solve_gmwct_via_mct,
    solve_wgmwct,
)
from cortes_arboles.services.oracle_service import brute_force_min_cut

from .strategies import tree_edges, weighted_instances


INF = settings.dp.INFINITY


class TestRows:

    def test_leaf(self):
        assert dp_leaf(0b01, 2).tolist() == [INF, 0, INF, INF]

    def test_one_child_can_close_the_component(self):
        row = dp_one_child(dp_leaf(0b01, 2), 5)
        assert row.tolist() == [5, 0, INF, INF]

    def test_two_children_with_the_same_set(self):
        row = dp_two_children(dp_leaf(1, 1), dp_leaf(1, 1), 3, 4)
        assert row.tolist() == [7, 3]

    def test_two_children_with_different_sets(self):
        row = dp_two_children(dp_leaf(0b01, 2), dp_leaf(0b10, 2), 3, 4)
        assert row.tolist() == [7, 4, 3, 0]

    def test_saturation(self):
        row = dp_two_children(dp_leaf(1, 1), np.full(2, INF, dtype=np.uint64), 1, 1)
        assert int(row.max()) == INF


def test_expand_to_requests():
    assert expand_to_requests([[0, 1, 2]]) == frozenset({(0, 1), (0, 2), (1, 2)})


class TestPreprocess:

    def test_leaves_are_terminals_and_tree_is_binary(self):
        instance = build_instance([(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6)],
                                  terminal_sets=[[1, 2, 3], [4, 6]])
        tree = preprocess(instance)
        leaves = [v for v, kids in tree.children.items() if not kids]
        assert all(tree.mask[v] for v in leaves)
        assert all(len(kids) <= 2 for kids in tree.children.values())
        originals = {o for o in tree.origin.values() if o is not None}
        assert originals == {0, 1, 2, 3, 4, 5}

    def test_non_terminal_leaves_are_pruned(self):
        instance = build_instance([(0, 1), (1, 2), (1, 3)], terminal_sets=[[0, 2]])
        tree = preprocess(instance)
        originals = {o for o in tree.origin.values() if o is not None}
        assert originals == {0, 1}


class TestSolveWgmwct:

    def test_internal_terminal(self):
        instance = build_instance([(0, 1), (1, 2)], terminal_sets=[[0, 1, 2]], costs=[3, 5])
        result = solve_wgmwct(instance)
        assert result.cost == 8
        assert sorted(result.cut.edges) == [0, 1]

    def test_chooses_the_cheapest_edge(self):
        instance = build_instance([(0, 1), (1, 2), (2, 3)], terminal_sets=[[0, 3]], costs=[4, 1, 6])
        result = solve_wgmwct(instance)
        assert result.cost == 1
        assert sorted(result.cut.edges) == [1]

    def test_zero_cost_edges(self):
        instance = build_instance([(0, 1), (0, 2)], terminal_sets=[[1, 2]], costs=[0, 9])
        assert solve_wgmwct(instance).cost == 0

    def test_single_terminal_needs_nothing(self):
        instance = build_instance([(0, 1), (1, 2)], terminal_sets=[[1]], costs=[2, 2])
        result = solve_wgmwct(instance)
        assert result.cost == 0
        assert result.cut.size == 0

    def test_terminal_set_limit(self, monkeypatch):
        monkeypatch.setattr(settings.dp, 'MAX_TERMINAL_SETS', 1)
        instance = build_instance([(0, 1), (1, 2)], terminal_sets=[[0, 1], [1, 2]], costs=[1, 1])
        with pytest.raises(TooManyTerminalSetsError):
            solve_wgmwct(instance)

    def test_solver_report(self):
        instance = build_instance([(0, 1), (1, 2), (2, 3)], terminal_sets=[[0, 3]], costs=[4, 1, 6])
        solver = MultiwayDPSolver()
        report = solver.solve(instance)
        assert report.status is EstadoResultado.OPTIMAL
        assert report.cost == 1
        assert report.cut == [[2, 3]]
        assert solver.solve(instance, k=0).status is EstadoResultado.NO


@hyp_settings(max_examples=80, deadline=None)
@given(weighted_instances())
def test_dp_matches_oracle(instance):
    expected, _ = brute_force_min_cut(instance)
    result = solve_wgmwct(instance)
    assert result.cost == expected
    assert result.cut.cost(instance) == expected
    assert verify_cut(instance, result.cut)


@hyp_settings(max_examples=40, deadline=None)
@given(tree_edges(max_edges=8), st.data())
def test_unit_costs_agree_with_multicut_reduction(edges, data):
    n = len(edges) + 1
    sets = [data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=min(3, n), unique=True))
            for _ in range(data.draw(st.integers(1, 3)))]
    instance = build_instance(edges, terminal_sets=sets, n=n, mode=Modo.GMWCT)
    k, cut = solve_gmwct_min_via_mct(instance)
    assert solve_wgmwct(instance).cost == k
    assert verify_cut(instance, cut)
    assert solve_gmwct_via_mct(instance, k) is not None


@pytest.mark.slow
def test_large_tree_with_three_sets():
    rng = np.random.default_rng(7)
    n = 5000
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    sets = [sorted(int(x) for x in rng.choice(n, size=3, replace=False)) for _ in range(3)]
    costs = [int(c) for c in rng.integers(0, 100, size=n - 1)]
    instance = build_instance(edges, terminal_sets=sets, costs=costs, n=n)
    result = solve_wgmwct(instance)
    assert verify_cut(instance, result.cut)
    assert result.cut.cost(instance) == result.cost
