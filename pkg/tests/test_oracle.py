"""
Pruebas de los oráculos de fuerza bruta.
"""

import networkx as nx
import pytest

from cortes_arboles.core.exceptions import TooLargeError
from cortes_arboles.models import EstadoResultado, build_instance
from cortes_arboles.services.oracle_service import BruteForceSolver, brute_force_min_cut, brute_force_vc


def test_star_triangle(star_triangle):
    size, cut = brute_force_min_cut(star_triangle)
    assert size == 2
    assert sorted(cut.edges) == [0, 1]


def test_first_subset_in_lexicographic_order():
    instance = build_instance([(0, 1), (1, 2), (2, 3)], [(0, 3)])
    size, cut = brute_force_min_cut(instance)
    assert size == 1
    assert sorted(cut.edges) == [0]


def test_weighted_prefers_cheaper_subsets():
    instance = build_instance([(0, 1), (1, 2), (2, 3)], terminal_sets=[[0, 3]], costs=[5, 2, 1])
    cost, cut = brute_force_min_cut(instance)
    assert cost == 1
    assert sorted(cut.edges) == [2]


def test_too_many_edges():
    instance = build_instance([(0, i) for i in range(1, 22)], [(1, 2)])
    with pytest.raises(TooLargeError):
        brute_force_min_cut(instance)


@pytest.mark.parametrize("graph, expected", [
    (nx.cycle_graph(3), 2),
    (nx.path_graph(4), 2),
    (nx.star_graph(4), 1),
    (nx.empty_graph(3), 0),
])
def test_vertex_cover(graph, expected):
    assert brute_force_vc(graph) == expected


def test_solver_interface(path_instance):
    report = BruteForceSolver().solve(path_instance, k=1)
    assert report.status is EstadoResultado.YES
    assert report.cut == [[2, 3]]
