"""
Pruebas de las reglas de reducción y del punto fijo.
"""

import pytest
from hypothesis import given, settings as hyp_settings

from cortes_arboles.models import build_instance
from cortes_arboles.services.forest import root_forest
from cortes_arboles.services.generator_service import GADGETS
from cortes_arboles.services.instance_file_service import reduced_instance
from cortes_arboles.services.oracle_service import brute_force_min_cut
from cortes_arboles.services.reduction_service import (
    TipoResultado,
    check_reduced,
    reduce_to_fixpoint,
    rule_subtree_isolation,
    rule_unit_request,
    rule_useless_edge,
)

from .strategies import mct_instances


def test_useless_edge_is_contracted():
    instance = build_instance([(0, 1), (0, 2), (0, 3)], [(1, 2)])
    forest = root_forest(instance)
    outcome = rule_useless_edge(forest)
    assert outcome.kind is TipoResultado.CHANGED
    assert outcome.contractions == [2]
    assert outcome.fired['useless_edge'] == 1


def test_unit_request_is_cut():
    instance = build_instance([(0, 1), (1, 2)], [(0, 1), (0, 2)])
    forest = root_forest(instance, budget=2)
    outcome = rule_unit_request(forest)
    assert outcome.forced_cuts == [0]
    assert forest.budget == 1
    assert forest.requests == []


def test_subtree_isolation_contracts_one_edge_per_call():
    instance = build_instance([(0, 1), (1, 2), (1, 3), (0, 4)], [(2, 3)])
    forest = root_forest(instance)
    outcome = rule_subtree_isolation(forest)
    assert outcome.kind is TipoResultado.CHANGED
    assert outcome.contractions == [0]
    assert forest.members[0] == {0, 1}


def test_even_path_star_is_solved_by_reduction():
    instance = build_instance([(0, 1), (0, 2), (0, 3)], [(1, 2), (2, 3)])
    forest = root_forest(instance, budget=1)
    outcome = reduce_to_fixpoint(forest)
    assert outcome.kind is TipoResultado.CHANGED
    assert forest.committed_cut == [1]
    assert forest.request_count == 0


def test_budget_exhaustion_is_infeasible():
    instance = build_instance([(0, 1), (0, 2), (0, 3)], [(1, 2), (2, 3)])
    forest = root_forest(instance, budget=0)
    assert reduce_to_fixpoint(forest).kind is TipoResultado.INFEASIBLE


def test_closed_triangle_is_cut_by_reduction(star_triangle):
    forest = root_forest(star_triangle)
    outcome = reduce_to_fixpoint(forest)
    assert outcome.fired["closed_component_cut"] == 1
    assert len(forest.committed_cut) == 2
    assert forest.request_count == 0
    assert check_reduced(forest) == []


def test_even_path_is_cut_before_exclusion():
    instance = build_instance([(0, 1), (0, 2), (0, 3)], [(1, 2), (2, 3)])
    outcome = reduce_to_fixpoint(root_forest(instance))
    assert outcome.fired["even_path_cut"] == 1
    assert outcome.fired["vc_exclusion"] == 0


@pytest.mark.parametrize("name, rule", [
    ("useless-edge", "useless_edge"),
    ("unit-request", "unit_request"),
    ("subtree-isolation", "subtree_isolation"),
    ("even-path", "even_path_cut"),
    ("vc-exclusion", "vc_exclusion"),
    ("star-triangle", "closed_component_cut"),
    ("cross-covered", "cross_covered_contract"),
    ("single-leak", "single_leak_contract"),
    ("special-quadruple", "closed_quadruple_cut"),
    ("grandparent-request", "grandparent_request"),
])
def test_gadget_fires_its_reduction_rule(name, rule):
    forest = root_forest(GADGETS[name]())
    outcome = reduce_to_fixpoint(forest)
    assert outcome.kind is not TipoResultado.INFEASIBLE
    assert outcome.fired[rule] >= 1
    assert check_reduced(forest) == []


# =============================================================================
# PROPIEDADES DE INSTANCIA REDUCIDA
# =============================================================================

def _violated(forest, item):
    return [v for v in check_reduced(forest) if v.startswith(f"({item})")]


@pytest.mark.parametrize("item, edges, requests", [
    ("ii", [(0, 1), (0, 2), (0, 3)], [(1, 2)]),
    ("iii", [(0, 1), (0, 2), (1, 3), (1, 4)], [(3, 2), (4, 2)]),
    ("iv", [(0, 1), (0, 2), (0, 3)], [(1, 2)]),
    ("v", [(0, 1), (0, 2), (0, 3)], [(1, 2), (2, 3)]),
    ("vi", [(0, 1), (0, 2), (0, 3)], [(1, 2), (2, 3)]),
    ("vii", [(0, 1), (0, 2), (1, 3), (1, 4)], [(3, 4), (3, 2)]),
])
def test_check_reduced_reports_each_property(item, edges, requests):
    forest = root_forest(build_instance(edges, requests))
    assert _violated(forest, item)


def test_check_reduced_reports_request_to_parent(path_instance):
    forest = root_forest(path_instance)
    assert _violated(forest, "i")
    reduce_to_fixpoint(forest)
    assert check_reduced(forest) == []


@hyp_settings(max_examples=500, deadline=None)
@given(mct_instances())
def test_fixpoint_satisfies_reduced_properties(instance):
    forest = root_forest(instance)
    outcome = reduce_to_fixpoint(forest)
    assert outcome.kind is not TipoResultado.INFEASIBLE
    assert check_reduced(forest) == []
    assert reduce_to_fixpoint(forest).kind is TipoResultado.FIXPOINT


@hyp_settings(max_examples=60, deadline=None)
@given(mct_instances())
def test_reduction_preserves_the_optimum(instance):
    optimum, _ = brute_force_min_cut(instance)
    forest = root_forest(instance)
    reduce_to_fixpoint(forest)
    reduced, _ = reduced_instance(forest)
    remaining, _ = brute_force_min_cut(reduced)
    assert remaining + len(forest.committed_cut) == optimum
