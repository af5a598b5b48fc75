"""
Pruebas de los modelos: construcción y validación de instancias, cortes y reportes.
"""

import json

import pytest

from cortes_arboles.core.exceptions import (
    BadSpecError,
    BadVertexIdError,
    InstanceError,
    NotATreeError,
    SelfRequestError,
    ValidationError,
)
from cortes_arboles.models import (
    CutSet,
    EstadoResultado,
    GenSpec,
    Modo,
    ModoGeneracion,
    ResultReport,
    SearchStats,
    build_instance,
    expand_pairs,
    verify_cut,
)


class TestBuildInstance:

    def test_normalizes_pairs_and_infers_n(self):
        instance = build_instance([(1, 0), (2, 1)], [(2, 0)])
        assert instance.n == 3
        assert instance.edges == ((0, 1), (1, 2))
        assert instance.requests == frozenset({(0, 2)})
        assert instance.mode is Modo.MCT

    def test_duplicate_requests_collapse(self):
        instance = build_instance([(0, 1)], [(0, 1), (1, 0)])
        assert len(instance.requests) == 1

    def test_cycle_is_rejected(self):
        with pytest.raises(NotATreeError):
            build_instance([(0, 1), (1, 2), (2, 0)], n=3)

    def test_duplicate_edge_is_rejected(self):
        with pytest.raises(NotATreeError):
            build_instance([(0, 1), (1, 0)], n=3)

    def test_disconnected_is_rejected(self):
        with pytest.raises(NotATreeError):
            build_instance([(0, 1), (2, 3)], n=4)

    def test_self_loop_is_rejected(self):
        with pytest.raises(NotATreeError):
            build_instance([(0, 0)], n=2)

    def test_vertex_out_of_range(self):
        with pytest.raises(BadVertexIdError):
            build_instance([(0, 1)], [(0, 5)], n=2)

    def test_self_request(self):
        with pytest.raises(SelfRequestError):
            build_instance([(0, 1)], [(1, 1)])

    def test_mixed_inputs(self):
        with pytest.raises(ValidationError):
            build_instance([(0, 1)], [(0, 1)], terminal_sets=[[0, 1]])

    def test_costs_require_weighted_mode(self):
        with pytest.raises(ValidationError):
            build_instance([(0, 1)], [(0, 1)], costs=[3], mode=Modo.MCT)

    def test_negative_cost(self):
        with pytest.raises(ValidationError):
            build_instance([(0, 1)], terminal_sets=[[0, 1]], costs=[-1])

    def test_negative_k(self):
        with pytest.raises(ValidationError):
            build_instance([(0, 1)], [(0, 1)], k=-1)

    def test_instance_errors_share_a_base(self):
        for error in (NotATreeError, BadVertexIdError, SelfRequestError, ValidationError):
            assert issubclass(error, InstanceError)

    def test_terminal_sets_expand_to_requests(self):
        instance = build_instance([(0, 1), (1, 2), (2, 3)], terminal_sets=[[0, 1, 2], [2, 3]])
        assert instance.mode is Modo.GMWCT
        assert instance.q == 2
        assert instance.requests == frozenset({(0, 1), (0, 2), (1, 2), (2, 3)})

    def test_weighted_mode_is_inferred_from_costs(self):
        instance = build_instance([(0, 1), (1, 2)], terminal_sets=[[0, 2]], costs=[4, 7])
        assert instance.mode is Modo.WGMWCT
        assert instance.edge_cost(1) == 7

    def test_single_vertex_tree(self):
        instance = build_instance([], n=1)
        assert instance.n == 1
        assert not instance.requests


def test_expand_pairs_deduplicates_across_sets():
    assert expand_pairs([[0, 1, 2], [1, 2]]) == frozenset({(0, 1), (0, 2), (1, 2)})


class TestCuts:

    def test_verify_cut(self, path_instance):
        assert verify_cut(path_instance, [1])
        assert not verify_cut(path_instance, [0])
        assert not verify_cut(path_instance, CutSet())

    def test_as_one_based(self, path_instance):
        assert CutSet.of([2, 0]).as_one_based(path_instance) == [[1, 2], [3, 4]]

    def test_cost(self):
        instance = build_instance([(0, 1), (1, 2)], terminal_sets=[[0, 2]], costs=[4, 7])
        assert CutSet.of([0, 1]).cost(instance) == 11


def test_search_stats_merge_takes_maxima():
    a = SearchStats(nodes=3, leaves=2, max_depth=4, worst_branching_number=1.5)
    a.record_rule('case_1')
    b = SearchStats(nodes=5, leaves=1, max_depth=2, fallback_count=1, worst_branching_number=2.0)
    b.record_rule('case_1')
    a.merge(b)
    assert (a.nodes, a.leaves, a.max_depth, a.fallback_count) == (8, 3, 4, 1)
    assert a.rule_counts['case_1'] == 2
    assert a.worst_branching_number == 2.0


def test_result_report_serializes_enums():
    report = ResultReport(EstadoResultado.OPTIMAL, Modo.MCT, size=1, cut=[[1, 2]])
    data = json.loads(report.to_json())
    assert data['status'] == 'optimal'
    assert data['mode'] == 'mct'
    assert data['cut'] == [[1, 2]]


class TestGenSpec:

    def test_gadget_needs_a_name(self):
        with pytest.raises(BadSpecError):
            GenSpec(mode=ModoGeneracion.GADGET)

    def test_bad_weight_range(self):
        with pytest.raises(BadSpecError):
            GenSpec(weight_range=(5, 1))

    def test_needs_an_edge(self):
        with pytest.raises(BadSpecError):
            GenSpec(n=0)
