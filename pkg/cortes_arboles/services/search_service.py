"""
Servicio de búsqueda con ramificación para multicorte en árboles.

Cada nodo reduce su bosque hasta el punto fijo, elige el vértice importante más
lejano y aplica la primera fase que produzca un plan: BranchRules 1/3, casos
1-7, fase G* y fase entre subárboles. Los planes de un solo lado se aplican en
el mismo nodo; los demás generan un hijo por lado.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..core.exceptions import (
    BudgetExhausted,
    CaseAnalysisViolation,
    InfeasibleBranch,
    TooLargeError,
    ValidationError,
)
from ..core.interfaces import CutSolverInterface
from ..models import (
    CutSet,
    EditLog,
    EstadoResultado,
    Instance,
    ResultReport,
    SearchStats,
    verify_cut,
)
from ..utils import log_execution_time, logger
from .branch_rules import (
    AccionLado,
    BranchPlan,
    ForestView,
    Side,
    branch_on_aux_graph,
    branch_on_cases,
    important_vertices,
)
from .forest import WorkingForest, root_forest
from .frontier_rules import generic_branch, gstar_phase, intertree_phase
from .reduction_service import TipoResultado, reduce_to_fixpoint


RHO = float(np.sqrt(np.sqrt(2.0) + 1.0))


def branching_number(signature: Sequence[int]) -> float:
    """
    Raíz positiva de sum(x^-d) = 1 para una firma de recurrencia.

    Args:
        signature: Decrementos del parámetro por lado

    Returns:
        float: Número de ramificación; 1.0 para un solo lado, inf si algún lado no decrementa
    """
    if len(signature) <= 1:
        return 1.0
    if min(signature) < 1:
        return math.inf
    top = max(signature)
    coefficients = np.zeros(top + 1)
    coefficients[0] = 1.0
    for d in signature:
        coefficients[d] -= 1.0
    roots = np.roots(coefficients)
    real = [r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0]
    return max(real)


def leaf_bound(k: int) -> int:
    return math.ceil(RHO ** k)


# =============================================================================
# NODOS Y APLICACIÓN DE LADOS
# =============================================================================

@dataclass
class SearchNode:
    """Nodo del árbol de búsqueda; posee su propia copia del bosque."""

    forest: WorkingForest
    favored: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    depth: int = 0
    node_id: int = 0


def _keep(forest: WorkingForest, favored: Dict[int, Tuple[int, ...]], edge: int, seen: set) -> None:
    if edge in seen:
        return
    seen.add(edge)
    if forest.is_cut(edge):
        raise InfeasibleBranch(f"Se conserva la arista cortada {edge}", error_code="KEEP_OF_CUT_EDGE")
    if forest.is_live(edge):
        forest.contract_edge(edge)
    for chained in favored.get(edge, ()):
        _keep(forest, favored, chained, seen)


def apply_side(node: SearchNode, side: Side, node_id: int = 0, recenter: Optional[bool] = None) -> SearchNode:
    """
    Aplica las ediciones de un lado sobre una copia del nodo y reduce.

    Los favores valen sólo dentro del lado que los declara; el hijo los
    registra pero no los hereda ningún lado posterior.

    Args:
        node: Nodo padre (no se modifica)
        side: Ediciones en orden
        node_id: Id del nodo hijo
        recenter: Reenraizar en el centro al reducir

    Returns:
        SearchNode: Nodo hijo reducido

    Raises:
        InfeasibleBranch: Si el lado contradice ediciones previas o la reducción falla
        BudgetExhausted: Si el lado excede el presupuesto
    """
    forest = node.forest.copy()
    forest.node_id = node_id
    favored: Dict[int, Tuple[int, ...]] = {}
    for edit in side:
        if edit.kind is AccionLado.CUT:
            if forest.is_cut(edit.edge):
                continue
            if not forest.is_live(edit.edge):
                raise InfeasibleBranch(f"Se corta la arista contraída {edit.edge}", error_code="CUT_OF_KEPT_EDGE")
            forest.cut_edge(edit.edge)
        elif edit.kind is AccionLado.KEEP:
            _keep(forest, favored, edit.edge, set())
        else:
            favored[edit.edge] = edit.chain
            vertex = forest.child_of_edge(edit.edge) if forest.is_live(edit.edge) else None
            forest.record_favor(vertex, edit.chain)

    if reduce_to_fixpoint(forest, recenter).kind is TipoResultado.INFEASIBLE:
        raise InfeasibleBranch("La reducción del hijo es infactible", error_code="INFEASIBLE_REDUCTION")
    return SearchNode(forest, favored, node.depth + 1, node_id)


# =============================================================================
# BÚSQUEDA
# =============================================================================

@dataclass
class SearchResult:
    """Resultado de una búsqueda de decisión."""

    cut: Optional[CutSet]
    stats: SearchStats
    log: Optional[EditLog] = None


class _Search:
    """Estado de una búsqueda: estadísticas, contador de nodos y configuración."""

    def __init__(self, config, threads: int, solve_component=None):
        self.config = config
        self.threads = threads
        self.solve_component = solve_component
        self.stats = SearchStats()
        self._next_id = 0

    def new_id(self) -> int:
        self._next_id += 1
        return self._next_id

    # ------------------------------------------------------------------
    # selección del plan
    # ------------------------------------------------------------------

    def _generic(self, view: ForestView) -> Optional[BranchPlan]:
        """
        Rama genérica sobre el camino de solicitud más corto.

        Raises:
            CaseAnalysisViolation: Si ALLOW_FALLBACK está deshabilitado
        """
        if not self.config.ALLOW_FALLBACK:
            raise CaseAnalysisViolation("Ningún caso aplica y la rama genérica está deshabilitada",
                                        error_code="NO_CASE_APPLIES")
        self.stats.fallback_count += 1
        logger.warning("Ningún caso aplica; se usa la rama genérica")
        return generic_branch(view, 'fallback')

    def _phases(self, view: ForestView) -> Optional[BranchPlan]:
        important = important_vertices(view)
        for v in important:
            plan = branch_on_aux_graph(view, v)
            if plan is not None:
                return plan
        if not important:
            return None
        w = important[0]
        p = view.parent(w)
        if p is None:
            return self._generic(view)

        q = view.parent(p)
        candidates = [p]
        if q is not None:
            candidates += [c for c in view.children(q)
                           if c != p and not view.is_leaf(c) and not view.is_important(c)]
        for anchor in candidates:
            plan = branch_on_cases(view, anchor, w if anchor == p else None)
            if plan is None and view.parent(anchor) is not None:
                plan = gstar_phase(view, anchor)
            if plan is not None and not (plan.forced and not plan.sides[0]):
                return plan

        plan = intertree_phase(view, p, self.solve_component)
        if plan is not None and not (plan.forced and not plan.sides[0]):
            return plan
        return self._generic(view)

    def next_plan(self, node: SearchNode) -> Optional[BranchPlan]:
        view = ForestView(node.forest)
        try:
            return self._phases(view)
        except CaseAnalysisViolation as e:
            if e.error_code == "NO_CASE_APPLIES":
                raise
            logger.warning(f"Precondición de caso violada ({e})")
            return self._generic(view)

    # ------------------------------------------------------------------
    # exploración
    # ------------------------------------------------------------------

    def _check_signature(self, plan: BranchPlan, index: int, before: Optional[int], child: SearchNode) -> None:
        if before is None or child.forest.budget is None or index >= len(plan.declared):
            return
        declared = plan.declared[index]
        if declared is None:
            return
        spent = before - child.forest.budget
        if spent < declared:
            self.stats.signature_shortfalls += 1
            logger.warning(f"{plan.rule}: el lado {index} gastó {spent} < {declared}")

    def _children(self, node: SearchNode, plan: BranchPlan):
        before = node.forest.budget
        for i, side in enumerate(plan.sides):
            try:
                child = apply_side(node, side, self.new_id(), self.config.RECENTER)
            except (InfeasibleBranch, BudgetExhausted) as e:
                logger.debug(f"{plan.rule}: lado {i} podado ({e.error_code})")
                continue
            self._check_signature(plan, i, before, child)
            yield child

    def explore(self, node: SearchNode) -> Optional[WorkingForest]:
        """Búsqueda en profundidad desde un nodo ya reducido."""
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, node.depth)
        while True:
            if not node.forest.request_count:
                self.stats.leaves += 1
                return node.forest
            if node.forest.budget is not None and node.forest.budget < 1:
                self.stats.leaves += 1
                return None
            plan = self.next_plan(node)
            if plan is None:
                raise CaseAnalysisViolation("Quedan solicitudes pero no hay plan", error_code="NO_PLAN")
            self.stats.record_rule(plan.rule)

            if plan.forced:
                before = len(node.forest.edge_ends)
                try:
                    forced = apply_side(node, plan.sides[0], node.node_id, self.config.RECENTER)
                except (InfeasibleBranch, BudgetExhausted):
                    self.stats.leaves += 1
                    return None
                if len(forced.forest.edge_ends) == before:
                    raise CaseAnalysisViolation(f"{plan.rule} no modificó el bosque", error_code="NO_PROGRESS")
                node = SearchNode(forced.forest, forced.favored, node.depth, node.node_id)
                continue

            self.stats.worst_branching_number = max(self.stats.worst_branching_number,
                                                    branching_number(plan.signature))
            if node.depth == 0 and self.threads > 1:
                return self._explore_parallel(node, plan)

            explored = False
            for child in self._children(node, plan):
                explored = True
                found = self.explore(child)
                if found is not None:
                    return found
            if not explored:
                self.stats.leaves += 1
            return None

    def _explore_parallel(self, node: SearchNode, plan: BranchPlan) -> Optional[WorkingForest]:
        children = list(self._children(node, plan))
        if not children:
            self.stats.leaves += 1
            return None

        def run(child: SearchNode):
            search = _Search(self.config, 1, self.solve_component)
            search._next_id = child.node_id * 1_000_000
            return search.explore(child), search.stats

        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            outcomes = list(executor.map(run, children))
        winner = None
        for found, stats in outcomes:
            self.stats.merge(stats)
            if winner is None and found is not None:
                winner = found
        return winner


# =============================================================================
# SOLUCIONADOR
# =============================================================================

class FPTMulticutSolver(CutSolverInterface):
    """
    Solucionador exacto de multicorte en árboles por ramificación acotada.

    `decide` responde la versión de decisión con presupuesto k; `solve_min`
    incrementa k desde 0 hasta encontrar un corte.
    """

    def __init__(self, config=None, threads: Optional[int] = None, preferred_root: Optional[int] = None):
        """
        Inicializa el solucionador.

        Args:
            config: Configuración opcional, usa settings.solver por defecto
            threads: Hilos para la raíz de búsqueda
            preferred_root: Raíz preferida del primer enraizado
        """
        self.config = config or settings.solver
        self.threads = max(1, threads or self.config.MAX_THREADS)
        self.preferred_root = preferred_root if preferred_root is not None else self.config.PREFERRED_ROOT
        self.last_stats = SearchStats()

    def _solve_component(self, sub: Instance) -> Optional[CutSet]:
        inner = FPTMulticutSolver(self.config, threads=1)
        return inner.solve_min(sub)[1]

    def decide(self, instance: Instance, k: int) -> SearchResult:
        """
        Decide si existe un corte de tamaño a lo sumo k.

        Args:
            instance: Instancia validada
            k: Presupuesto

        Returns:
            SearchResult: Corte testigo (o None) y estadísticas
        """
        if k < 0:
            raise ValidationError("k debe ser no negativo", error_code="NEGATIVE_K")
        preferred = self.preferred_root if self.preferred_root is not None and self.preferred_root < instance.n else None
        forest = root_forest(instance, preferred, budget=k)
        search = _Search(self.config, self.threads, self._solve_component)
        search.stats.initial_k = k

        outcome = reduce_to_fixpoint(forest, self.config.RECENTER)
        for rule, count in outcome.fired.items():
            search.stats.rule_counts[rule] += count
        if outcome.kind is TipoResultado.INFEASIBLE:
            search.stats.nodes = search.stats.leaves = 1
            self.last_stats = search.stats
            return SearchResult(None, search.stats)

        solved = search.explore(SearchNode(forest))
        self.last_stats = search.stats
        if solved is None:
            return SearchResult(None, search.stats)

        cut = CutSet.of(solved.committed_cut)
        if not verify_cut(instance, cut) or cut.size > k:
            logger.error(f"Corte inválido producido por la búsqueda: {sorted(cut.edges)}")
            raise CaseAnalysisViolation("La búsqueda devolvió un corte inválido", error_code="INVALID_WITNESS",
                                        details={'cut': sorted(cut.edges), 'k': k})
        return SearchResult(cut, search.stats, solved.log)

    @log_execution_time
    def solve_min(self, instance: Instance) -> Tuple[int, CutSet]:
        """
        Tamaño mínimo de un multicorte y un testigo.

        Raises:
            TooLargeError: Si el óptimo supera settings.solver.MAX_K
        """
        total = SearchStats(initial_k=0)
        upper = min(len(instance.requests), len(instance.edges))
        for k in range(upper + 1):
            if k > self.config.MAX_K:
                raise TooLargeError(f"El óptimo supera MAX_K={self.config.MAX_K}", error_code="K_TOO_LARGE")
            result = self.decide(instance, k)
            total.merge(result.stats)
            if result.cut is not None:
                result.stats.initial_k = k
                self.last_stats = result.stats
                logger.info(f"Óptimo {k} tras {total.nodes} nodos")
                return k, result.cut
        raise CaseAnalysisViolation("No se encontró corte dentro de la cota trivial", error_code="NO_CUT_FOUND")

    def solve(self, instance: Instance, k: Optional[int] = None) -> ResultReport:
        start = time.perf_counter()
        if k is None:
            size, cut = self.solve_min(instance)
            status = EstadoResultado.OPTIMAL
        else:
            result = self.decide(instance, k)
            cut = result.cut
            size = cut.size if cut is not None else None
            status = EstadoResultado.YES if cut is not None else EstadoResultado.NO
        stats = self.last_stats.to_dict()
        stats['leaf_bound'] = leaf_bound(k if k is not None else size)
        return ResultReport(
            status=status,
            mode=instance.mode,
            size=size,
            cost=cut.cost(instance) if cut is not None else None,
            cut=cut.as_one_based(instance) if cut is not None else [],
            stats=stats,
            wall_time=time.perf_counter() - start,
        )


def solve_decision(instance: Instance, k: int, threads: Optional[int] = None) -> Optional[CutSet]:
    """Corte de tamaño a lo sumo k, o None si no existe."""
    return FPTMulticutSolver(threads=threads).decide(instance, k).cut


def solve_min(instance: Instance, threads: Optional[int] = None) -> Tuple[int, CutSet]:
    return FPTMulticutSolver(threads=threads).solve_min(instance)


__all__ = [
    'RHO',
    'branching_number',
    'leaf_bound',
    'SearchNode',
    'SearchResult',
    'apply_side',
    'FPTMulticutSolver',
    'solve_decision',
    'solve_min',
]
