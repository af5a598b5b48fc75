"""
Pruebas de los grafos auxiliares y de las coberturas por vértices de grado máximo 2.
"""

import networkx as nx
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from cortes_arboles.core.exceptions import CaseAnalysisViolation, DegreeTooHighError
from cortes_arboles.models import build_instance
from cortes_arboles.services.aux_graph import (
    TipoComponente,
    build_Gu,
    components,
    cover_containing,
    cover_from_endpoint,
    in_some_min_cover,
    jointly_coverable,
    min_covers,
    min_vc_deg2,
)
from cortes_arboles.services.forest import root_forest
from cortes_arboles.services.oracle_service import brute_force_vc


@st.composite
def deg2_graphs(draw):
    """Unión disjunta de caminos y ciclos con ids consecutivos."""
    graph = nx.Graph()
    offset = 0
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        size = draw(st.integers(min_value=1, max_value=5))
        cycle = size >= 3 and draw(st.booleans())
        piece = nx.cycle_graph(size) if cycle else nx.path_graph(size)
        graph.add_nodes_from(range(offset, offset + size))
        graph.add_edges_from((u + offset, v + offset) for u, v in piece.edges)
        offset += size
    return graph


def test_components_classify_paths_and_cycles():
    graph = nx.Graph([(5, 6), (6, 7), (0, 1), (1, 2), (2, 0)])
    graph.add_node(9)
    shapes = components(graph)
    assert [s.kind for s in shapes] == [TipoComponente.CYCLE, TipoComponente.PATH, TipoComponente.PATH]
    assert shapes[0].sequence == (0, 1, 2)
    assert shapes[1].sequence == (5, 6, 7)
    assert shapes[1].length == 2
    assert shapes[2].length == 0


def test_degree_three_is_rejected():
    with pytest.raises(DegreeTooHighError):
        components(nx.star_graph(3))


class TestMinCovers:

    def test_even_length_path_has_a_unique_cover(self):
        (shape,) = components(nx.path_graph(5))
        assert min_covers(shape) == [frozenset({1, 3})]

    def test_odd_length_path_covers(self):
        (shape,) = components(nx.path_graph(4))
        assert min_covers(shape) == [frozenset({0, 2}), frozenset({1, 2}), frozenset({1, 3})]
        assert cover_from_endpoint(shape, 0) == frozenset({0, 2})
        assert cover_from_endpoint(shape, 3) == frozenset({1, 3})

    def test_cover_from_endpoint_needs_an_odd_path(self):
        (shape,) = components(nx.path_graph(3))
        with pytest.raises(CaseAnalysisViolation):
            cover_from_endpoint(shape, 0)

    def test_cycles(self):
        (even,) = components(nx.cycle_graph(4))
        assert min_covers(even) == [frozenset({0, 2}), frozenset({1, 3})]
        (odd,) = components(nx.cycle_graph(3))
        assert len(min_covers(odd)) == 3
        assert all(len(c) == 2 for c in min_covers(odd))

    def test_in_some_min_cover(self):
        (shape,) = components(nx.path_graph(3))
        assert in_some_min_cover(shape, 1)
        assert not in_some_min_cover(shape, 0)

    def test_joint_coverability(self):
        graph = nx.path_graph(4)
        assert jointly_coverable(graph, [0, 2])
        assert not jointly_coverable(graph, [0, 3])
        assert cover_containing(graph, [3]) == frozenset({1, 3})


@hyp_settings(max_examples=60, deadline=None)
@given(deg2_graphs())
def test_min_vc_matches_enumeration(graph):
    result = min_vc_deg2(graph)
    assert result.size == brute_force_vc(graph)
    assert all(u in result.cover or v in result.cover for u, v in graph.edges)
    for shape in result.shapes:
        for cover in min_covers(shape):
            sub = graph.subgraph(shape.sequence)
            assert all(u in cover or v in cover for u, v in sub.edges)
            assert len(cover) == brute_force_vc(sub)


def test_build_gu_uses_leaf_children(star_triangle):
    forest = root_forest(star_triangle)
    graph = build_Gu(forest, 0)
    assert graph.nodes == [1, 2, 3]
    assert graph.max_degree() == 2
    assert sorted(graph.graph.edges) == [(1, 2), (1, 3), (2, 3)]


def test_build_gu_ignores_requests_leaving_the_star():
    instance = build_instance([(0, 1), (1, 2), (1, 3), (0, 4)], [(2, 3), (2, 4)])
    forest = root_forest(instance)
    graph = build_Gu(forest, 1)
    assert graph.nodes == [2, 3]
    assert sorted(graph.graph.edges) == [(2, 3)]
