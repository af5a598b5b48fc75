"""
Pruebas del solucionador FPT: número de ramificación, gadgets y comparación con el oráculo.
"""

import math

import pytest
from hypothesis import given, settings as hyp_settings

from cortes_arboles.config import SolverConfig
from cortes_arboles.core.exceptions import (
    BudgetExhausted,
    CaseAnalysisViolation,
    InfeasibleBranch,
    TooLargeError,
    ValidationError,
)
from cortes_arboles.models import EstadoResultado, build_instance, verify_cut
from cortes_arboles.services.branch_rules import RULE_SIGNATURES, AccionLado, BranchPlan, ForestView, SideEdit
from cortes_arboles.services.forest import root_forest
from cortes_arboles.services.generator_service import GADGETS
from cortes_arboles.services.oracle_service import brute_force_min_cut
from cortes_arboles.services.search_service import (
    RHO,
    FPTMulticutSolver,
    SearchNode,
    _Search,
    apply_side,
    branching_number,
    leaf_bound,
    solve_decision,
    solve_min,
)

from .strategies import mct_instances, shallow_instances


# =============================================================================
# NÚMERO DE RAMIFICACIÓN
# =============================================================================

class TestBranchingNumber:

    def test_rho_is_the_root_of_its_polynomial(self):
        assert RHO == pytest.approx(1.5537739740300374)
        assert RHO ** 4 == pytest.approx(2 * RHO ** 2 + 1)

    def test_known_signatures(self):
        assert branching_number((1, 1)) == pytest.approx(2.0)
        assert branching_number((1, 2)) == pytest.approx((1 + math.sqrt(5)) / 2)
        assert branching_number((2, 2, 4)) == pytest.approx(RHO)
        assert branching_number((2, 4, 4)) == pytest.approx(math.sqrt(2))

    def test_degenerate_signatures(self):
        assert branching_number((3,)) == 1.0
        assert branching_number((0, 2)) == math.inf

    def test_leaf_bound(self):
        assert leaf_bound(0) == 1
        assert leaf_bound(1) == 2
        assert leaf_bound(2) == 3


# =============================================================================
# GADGETS CON REGLA CONOCIDA
# =============================================================================

def _strict_solver() -> FPTMulticutSolver:
    return FPTMulticutSolver(config=SolverConfig(ALLOW_FALLBACK=False))


@pytest.mark.parametrize("name, k, rule", [
    ('branch-rule-1', 1, 'branch_rule_1'),
    ('branch-rule-3', 4, 'branch_rule_3'),
    ('case-1', 3, 'case_1'),
    ('case-2', 3, 'case_2'),
    ('case-2-5', 3, 'case_2_5'),
    ('case-1-5', 3, 'case_1_5'),
    ('case-3-1', 2, 'case_3_1'),
    ('case-3-2', 3, 'case_3_2'),
    ('case-4', 3, 'case_4'),
    ('case-5-1', 2, 'case_5_1'),
    ('case-5-2', 2, 'case_5_2'),
    ('case-6', 2, 'case_6'),
    ('case-70', 3, 'case_70'),
    ('case-7-1', 3, 'case_7_1'),
    ('case-7-2', 3, 'case_7_2'),
    ('case-7-3', 3, 'case_7_3'),
    ('case-7-4', 3, 'case_7_4'),
])
def test_root_case_gadget_fires_its_rule(name, k, rule):
    instance = GADGETS[name]()
    solver = _strict_solver()
    result = solver.decide(instance, k)
    assert result.cut is not None
    assert verify_cut(instance, result.cut)
    assert result.stats.rule_counts[rule] >= 1
    assert result.stats.fallback_count == 0
    assert result.stats.leaves <= leaf_bound(k)
    assert solver.decide(instance, k - 1).cut is None


@pytest.mark.parametrize("name, k, rule", [
    ('gstar-even-path', 5, 'gstar_even_path'),
    ('gstar-odd-path', 6, 'gstar_odd_path'),
    ('gstar-even-cycle', 5, 'gstar_even_cycle'),
    ('gstar-odd-cycle', 8, 'gstar_odd_cycle'),
    ('case-200', 3, 'case_200'),
    ('case-300', 5, 'case_300'),
    ('case-400', 5, 'case_400'),
    ('case-500', 4, 'case_500'),
    ('case-600', 6, 'case_600'),
])
def test_deep_gadget_fires_its_rule(name, k, rule):
    instance = GADGETS[name]()
    solver = _strict_solver()
    result = solver.decide(instance, k)
    assert result.cut is not None
    assert verify_cut(instance, result.cut)
    assert result.stats.rule_counts[rule] >= 1
    assert result.stats.fallback_count == 0
    assert solver.decide(instance, k - 1).cut is None


def test_recentred_instance_stays_within_leaf_bound():
    edges = [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (5, 6), (4, 7), (5, 8),
             (8, 9), (9, 10), (9, 11), (9, 12), (12, 13), (11, 14), (14, 15), (14, 16)]
    requests = [(1, 5), (3, 5), (6, 11), (8, 11), (10, 16), (12, 15), (15, 16)]
    instance = build_instance(edges, requests, n=17)
    assert brute_force_min_cut(instance)[0] == 3

    solver = _strict_solver()
    result = solver.decide(instance, 3)
    assert result.cut is not None
    assert verify_cut(instance, result.cut)
    assert result.stats.fallback_count == 0
    assert result.stats.leaves <= leaf_bound(3)
    assert result.stats.rule_counts['case_5_2'] >= 1
    assert solver.decide(instance, 2).cut is None


def test_disabled_fallback_raises_instead_of_branching(star_triangle):
    view = ForestView(root_forest(star_triangle))
    with pytest.raises(CaseAnalysisViolation) as info:
        _Search(SolverConfig(ALLOW_FALLBACK=False), threads=1)._generic(view)
    assert info.value.error_code == "NO_CASE_APPLIES"

    search = _Search(SolverConfig(ALLOW_FALLBACK=True), threads=1)
    plan = search._generic(view)
    assert plan.rule == 'fallback'
    assert search.stats.fallback_count == 1


# =============================================================================
# FIRMAS DECLARADAS
# =============================================================================

def test_declared_signatures_stay_within_rho():
    unbounded = {'case_500', 'case_600'}
    for rule, signature in RULE_SIGNATURES.items():
        if rule not in unbounded:
            assert branching_number(signature) <= RHO + 1e-9, rule
    assert branching_number(RULE_SIGNATURES['gstar_odd_cycle']) == pytest.approx(RHO)


def test_signature_prefers_declared_bounds():
    side = (SideEdit(AccionLado.CUT, 0),)
    assert BranchPlan('case_4', [side, side]).signature == (1, 1)
    assert BranchPlan('case_4', [side, side], (3, 1)).signature == (3, 1)
    assert BranchPlan('case_4', [side, side], (3, None)).signature == (1, 1)


def test_signature_shortfall_is_counted():
    instance = build_instance([(0, 1), (0, 2), (0, 3)], [(1, 2)])
    node = SearchNode(root_forest(instance, budget=3))
    search = _Search(SolverConfig(), threads=1)
    side = (SideEdit(AccionLado.CUT, 0),)

    assert len(list(search._children(node, BranchPlan('case_4', [side], (1,))))) == 1
    assert search.stats.signature_shortfalls == 0
    list(search._children(node, BranchPlan('case_4', [side], (3,))))
    assert search.stats.signature_shortfalls == 1


@pytest.mark.parametrize("name", sorted(GADGETS))
def test_gadget_optimum_matches_oracle(name):
    instance = GADGETS[name]()
    expected, _ = brute_force_min_cut(instance)
    k, cut = solve_min(instance)
    assert k == expected
    assert verify_cut(instance, cut)
    assert cut.size == k


@pytest.mark.parametrize("name", sorted(GADGETS))
def test_parallel_root_agrees(name):
    instance = GADGETS[name]()
    assert solve_min(instance, threads=2)[0] == solve_min(instance)[0]


# =============================================================================
# COMPARACIÓN CON EL ORÁCULO
# =============================================================================

@hyp_settings(max_examples=80, deadline=None)
@given(mct_instances())
def test_min_matches_oracle(instance):
    expected, _ = brute_force_min_cut(instance)
    k, cut = solve_min(instance)
    assert k == expected
    assert cut.size == k
    assert verify_cut(instance, cut)


@hyp_settings(max_examples=60, deadline=None)
@given(mct_instances())
def test_decision_is_monotone(instance):
    expected, _ = brute_force_min_cut(instance)
    if expected > 0:
        assert solve_decision(instance, expected - 1) is None
    witness = solve_decision(instance, expected)
    assert witness is not None and verify_cut(instance, witness)
    assert solve_decision(instance, expected + 1) is not None


@pytest.mark.slow
@hyp_settings(max_examples=1000, deadline=None)
@given(mct_instances(max_edges=16, max_requests=12))
def test_min_matches_oracle_on_larger_trees(instance):
    expected, _ = brute_force_min_cut(instance)
    assert solve_min(instance)[0] == expected


@hyp_settings(max_examples=200, deadline=None)
@given(shallow_instances())
def test_shallow_instances_need_no_fallback(instance):
    expected, _ = brute_force_min_cut(instance)
    solver = _strict_solver()
    assert solver.solve_min(instance)[0] == expected

    result = solver.decide(instance, expected)
    assert result.cut is not None
    assert result.stats.fallback_count == 0
    assert result.stats.leaves <= leaf_bound(expected)


# =============================================================================
# SOLUCIONADOR
# =============================================================================

def test_no_requests_needs_no_cut():
    instance = build_instance([(0, 1), (1, 2)], [])
    k, cut = solve_min(instance)
    assert k == 0
    assert cut.size == 0


def test_negative_budget_is_rejected(star_triangle):
    with pytest.raises(ValidationError):
        FPTMulticutSolver().decide(star_triangle, -1)


def test_max_k_guard():
    solver = FPTMulticutSolver(config=SolverConfig(MAX_K=0))
    with pytest.raises(TooLargeError):
        solver.solve_min(GADGETS['branch-rule-1']())


def test_report(star_triangle):
    solver = FPTMulticutSolver()
    report = solver.solve(star_triangle)
    assert report.status is EstadoResultado.OPTIMAL
    assert report.size == 2
    assert report.stats['leaf_bound'] == leaf_bound(2)
    assert len(report.cut) == 2

    report = solver.solve(star_triangle, k=1)
    assert report.status is EstadoResultado.NO
    assert report.cut == []


class TestApplySide:

    def test_keep_of_cut_edge_is_infeasible(self, path_instance):
        node = SearchNode(root_forest(path_instance, budget=2))
        side = (SideEdit(AccionLado.CUT, 1), SideEdit(AccionLado.KEEP, 1))
        with pytest.raises(InfeasibleBranch):
            apply_side(node, side)

    def test_cut_beyond_budget(self, path_instance):
        node = SearchNode(root_forest(path_instance, budget=0))
        with pytest.raises(BudgetExhausted):
            apply_side(node, (SideEdit(AccionLado.CUT, 1),))

    def test_keep_follows_favor_chain(self, path_instance):
        node = SearchNode(root_forest(path_instance, budget=2))
        side = (SideEdit(AccionLado.FAVOR, 0, (2,)), SideEdit(AccionLado.KEEP, 0))
        child = apply_side(node, side)
        assert not child.forest.is_live(0)
        assert not child.forest.is_live(2)
        assert not child.forest.is_cut(2)

    def test_parent_is_untouched(self, path_instance):
        forest = root_forest(path_instance, budget=2)
        child = apply_side(SearchNode(forest), (SideEdit(AccionLado.CUT, 1),))
        assert forest.committed_cut == []
        assert child.forest.committed_cut == [1]
        assert child.depth == 1

    def test_favors_do_not_outlive_their_side(self, path_instance):
        node = SearchNode(root_forest(path_instance, budget=2), favored={0: (2,)})
        child = apply_side(node, (SideEdit(AccionLado.CUT, 1),))
        assert child.favored == {}

        child = apply_side(node, (SideEdit(AccionLado.FAVOR, 0, (2,)), SideEdit(AccionLado.CUT, 1)))
        assert child.favored == {0: (2,)}
