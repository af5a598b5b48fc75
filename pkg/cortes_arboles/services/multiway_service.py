"""
Servicio de corte multivía generalizado en árboles.

Incluye la reducción de conjuntos de terminales a solicitudes (para usar el
solucionador FPT) y el programa dinámico de patrones de conexión para la
versión ponderada, lineal en n para q fijo.
"""

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from ..config import settings
from ..core.exceptions import DynamicProgrammingError, EmptyAfterPreprocessing, TooManyTerminalSetsError
from ..core.interfaces import CutSolverInterface
from ..models import (
    CutSet,
    EstadoResultado,
    Instance,
    Modo,
    Par,
    ResultReport,
    build_instance,
    expand_pairs,
)
from ..utils import log_execution_time, logger
from .search_service import FPTMulticutSolver


# =============================================================================
# REDUCCIÓN A SOLICITUDES
# =============================================================================

def expand_to_requests(terminal_sets: Iterable[Iterable[int]]) -> FrozenSet[Par]:
    """Todos los pares distintos dentro de cada conjunto, sin duplicados."""
    return expand_pairs(terminal_sets)


def _as_mct(instance: Instance) -> Instance:
    return build_instance(list(instance.edges), expand_to_requests(instance.terminal_sets or ()),
                          n=instance.n, mode=Modo.MCT, k=instance.k)


def solve_gmwct_via_mct(instance: Instance, k: int, threads: Optional[int] = None) -> Optional[CutSet]:
    """
    Decide GMWCT sin pesos a través del solucionador de multicorte.

    Returns:
        Optional[CutSet]: Corte de tamaño a lo sumo k, o None
    """
    return FPTMulticutSolver(threads=threads).decide(_as_mct(instance), k).cut


def solve_gmwct_min_via_mct(instance: Instance, threads: Optional[int] = None) -> Tuple[int, CutSet]:
    return FPTMulticutSolver(threads=threads).solve_min(_as_mct(instance))


# =============================================================================
# PREPROCESAMIENTO
# =============================================================================

@dataclass
class PreprocessedTree:
    """
    Árbol binario enraizado cuyas hojas son exactamente los terminales.

    `origin[v]` es el id de la arista original entre v y su padre, o None para
    aristas sintéticas de costo centinela.
    """

    root: int
    q: int
    children: Dict[int, List[int]] = field(default_factory=dict)
    cost: Dict[int, int] = field(default_factory=dict)
    origin: Dict[int, Optional[int]] = field(default_factory=dict)
    mask: Dict[int, int] = field(default_factory=dict)
    sentinel: int = 1

    @property
    def size(self) -> int:
        return len(self.children)

    def postorder(self) -> List[int]:
        order, stack = [], [self.root]
        while stack:
            u = stack.pop()
            order.append(u)
            stack.extend(self.children[u])
        return order[::-1]


def _terminal_masks(instance: Instance) -> Dict[int, int]:
    masks: Dict[int, int] = {}
    for i, terminal_set in enumerate(instance.terminal_sets or ()):
        for v in terminal_set:
            masks[v] = masks.get(v, 0) | (1 << i)
    return masks


def preprocess(instance: Instance) -> PreprocessedTree:
    """
    Lleva el árbol a la forma binaria con hojas terminales.

    Args:
        instance: Instancia gmwct o wgmwct

    Returns:
        PreprocessedTree: Árbol enraizado y binarizado

    Raises:
        EmptyAfterPreprocessing: Si quedan menos de dos vértices (nada que separar)
    """
    q = instance.q
    masks = _terminal_masks(instance)
    sentinel = sum(instance.edge_cost(e) for e in range(len(instance.edges))) + 1

    graph = nx.Graph()
    graph.add_nodes_from(range(instance.n))
    for eid, (u, v) in enumerate(instance.edges):
        graph.add_edge(u, v, cost=instance.edge_cost(eid), origin=eid)

    pending = [v for v in graph.nodes if graph.degree[v] <= 1 and not masks.get(v)]
    while pending:
        v = pending.pop()
        if v not in graph or graph.degree[v] > 1 or masks.get(v):
            continue
        neighbours = list(graph.adj[v])
        graph.remove_node(v)
        pending.extend(neighbours)
    if graph.number_of_nodes() < 2:
        raise EmptyAfterPreprocessing("Menos de dos vértices tras el preprocesamiento",
                                      error_code="EMPTY_AFTER_PREPROCESSING")

    next_id = instance.n
    for u in sorted(graph.nodes):
        if masks.get(u) and graph.degree[u] >= 2:
            graph.add_edge(u, next_id, cost=sentinel, origin=None)
            masks[next_id] = masks.pop(u)
            next_id += 1

    internal = [v for v in sorted(graph.nodes) if graph.degree[v] >= 2]
    if internal:
        root = internal[0]
    else:
        (a, b), = graph.edges
        data = graph.edges[a, b]
        graph.remove_edge(a, b)
        root = next_id
        next_id += 1
        graph.add_edge(a, root, **data)
        graph.add_edge(root, b, cost=sentinel, origin=None)

    tree = PreprocessedTree(root=root, q=q, sentinel=sentinel)
    tree.children[root] = []
    for parent, child in nx.bfs_edges(graph, root, sort_neighbors=sorted):
        tree.children.setdefault(parent, []).append(child)
        tree.children.setdefault(child, [])
        tree.cost[child] = graph.edges[parent, child]['cost']
        tree.origin[child] = graph.edges[parent, child]['origin']
    tree.mask = {v: masks.get(v, 0) for v in tree.children}

    for u in list(tree.children):
        kids = tree.children[u]
        while len(kids) > 2:
            link = next_id
            next_id += 1
            tree.children[link] = kids[1:]
            tree.cost[link] = sentinel
            tree.origin[link] = None
            tree.mask[link] = 0
            tree.children[u] = [kids[0], link]
            u, kids = link, tree.children[link]
    logger.debug(f"Preprocesamiento: {tree.size} vértices, centinela {sentinel}")
    return tree


# =============================================================================
# FILAS DEL PROGRAMA DINÁMICO
# =============================================================================

def _saturate(values: np.ndarray) -> np.ndarray:
    return np.minimum(values, np.uint64(settings.dp.INFINITY))


def _pattern_pairs(q: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Las 3^q parejas (B_v, B_w) sin posiciones compartidas, con su OR."""
    left, right = [], []
    for digits in product((0, 1, 2), repeat=q):
        bv = sum(1 << i for i, d in enumerate(digits) if d == 1)
        bw = sum(1 << i for i, d in enumerate(digits) if d == 2)
        left.append(bv)
        right.append(bw)
    left_arr = np.array(left, dtype=np.int64)
    right_arr = np.array(right, dtype=np.int64)
    return left_arr, right_arr, left_arr | right_arr


def dp_leaf(mask: int, q: int) -> np.ndarray:
    """Fila de una hoja: 0 en su único patrón válido, +∞ en los demás."""
    row = np.full(1 << q, settings.dp.INFINITY, dtype=np.uint64)
    row[mask] = 0
    return row


def dp_one_child(child_row: np.ndarray, edge_cost: int) -> np.ndarray:
    row = child_row.copy()
    removed = _saturate(np.uint64(edge_cost) + child_row.min())
    row[0] = min(row[0], removed)
    return row


def dp_two_children(row_v: np.ndarray, row_w: np.ndarray, cost_uv: int, cost_uw: int,
                    pairs: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None) -> np.ndarray:
    """
    Combina las filas de dos hijos.

    Args:
        row_v: Fila del primer hijo
        row_w: Fila del segundo hijo
        cost_uv: Costo de la arista al primer hijo
        cost_uw: Costo de la arista al segundo hijo
        pairs: Parejas precalculadas de `_pattern_pairs`

    Returns:
        np.ndarray: Fila del padre
    """
    q = int(row_v.shape[0]).bit_length() - 1
    left, right, union = pairs if pairs is not None else _pattern_pairs(q)
    row = np.full_like(row_v, settings.dp.INFINITY)
    np.minimum.at(row, union, _saturate(row_v[left] + row_w[right]))

    cut_v = _saturate(np.uint64(cost_uv) + row_v.min())
    cut_w = _saturate(np.uint64(cost_uw) + row_w.min())
    row = np.minimum(row, _saturate(row_w + cut_v))
    row = np.minimum(row, _saturate(row_v + cut_w))
    row[0] = min(row[0], _saturate(cut_v + cut_w))
    return row


# =============================================================================
# SOLUCIÓN
# =============================================================================

@dataclass
class DPResult:
    cost: int
    cut: CutSet
    vertices: int = 0
    q: int = 0


def _backtrack(tree: PreprocessedTree, rows: Dict[int, np.ndarray], pairs) -> List[int]:
    """Aristas sintéticas o no, removidas por una elección óptima; prefiere conservar."""
    infinity = settings.dp.INFINITY
    removed: List[int] = []
    start = int(np.argmin(rows[tree.root]))
    stack = [(tree.root, start)]
    while stack:
        u, pattern = stack.pop()
        kids = tree.children[u]
        target = int(rows[u][pattern])
        if not kids:
            continue
        if len(kids) == 1:
            (v,) = kids
            if int(rows[v][pattern]) == target:
                stack.append((v, pattern))
            else:
                removed.append(v)
                stack.append((v, int(np.argmin(rows[v]))))
            continue

        v, w = kids
        rv, rw = rows[v], rows[w]
        left, right, union = pairs
        choice = None
        sums = _saturate(rv[left] + rw[right])
        hits = np.flatnonzero((union == pattern) & (sums == np.uint64(target)))
        if hits.size:
            i = hits[0]
            choice = [(v, int(left[i])), (w, int(right[i]))]
        else:
            best_v, best_w = int(np.argmin(rv)), int(np.argmin(rw))
            cut_v = min(tree.cost[v] + int(rv[best_v]), infinity)
            cut_w = min(tree.cost[w] + int(rw[best_w]), infinity)
            options = []
            if min(int(rw[pattern]) + cut_v, infinity) == target:
                options.append((tree.origin[v], [v], [(v, best_v), (w, pattern)]))
            if min(int(rv[pattern]) + cut_w, infinity) == target:
                options.append((tree.origin[w], [w], [(v, pattern), (w, best_w)]))
            if options:
                options.sort(key=lambda o: (o[0] is None, o[0] if o[0] is not None else 0))
                _, cut, choice = options[0]
                removed.extend(cut)
            else:
                removed.extend([v, w])
                choice = [(v, best_v), (w, best_w)]
        stack.extend(choice)
    return removed


@log_execution_time
def solve_wgmwct(instance: Instance) -> DPResult:
    """
    Costo mínimo de un corte multivía generalizado ponderado.

    Args:
        instance: Instancia con conjuntos de terminales y costos (1 si faltan)

    Returns:
        DPResult: Costo óptimo y corte en ids de aristas originales

    Raises:
        TooManyTerminalSetsError: Si q supera settings.dp.MAX_TERMINAL_SETS
    """
    q = instance.q
    if q > settings.dp.MAX_TERMINAL_SETS:
        raise TooManyTerminalSetsError(f"q={q} supera el máximo {settings.dp.MAX_TERMINAL_SETS}",
                                       error_code="TOO_MANY_TERMINAL_SETS", details={'q': q})
    if q == 0:
        return DPResult(0, CutSet())
    try:
        tree = preprocess(instance)
    except EmptyAfterPreprocessing:
        return DPResult(0, CutSet(), 0, q)

    pairs = _pattern_pairs(q)
    rows: Dict[int, np.ndarray] = {}
    for u in tree.postorder():
        kids = tree.children[u]
        if not kids:
            rows[u] = dp_leaf(tree.mask[u], q)
        elif len(kids) == 1:
            rows[u] = dp_one_child(rows[kids[0]], tree.cost[kids[0]])
        else:
            v, w = kids
            rows[u] = dp_two_children(rows[v], rows[w], tree.cost[v], tree.cost[w], pairs)

    optimum = int(rows[tree.root].min())
    if optimum >= tree.sentinel:
        raise DynamicProgrammingError("El óptimo no es finito", error_code="NO_FINITE_SOLUTION")

    removed = _backtrack(tree, rows, pairs)
    origins = [tree.origin[v] for v in removed]
    if any(o is None for o in origins):
        raise DynamicProgrammingError("Una arista sintética aparece en la solución", error_code="SENTINEL_IN_CUT")
    cut = CutSet.of(origins)
    if cut.cost(instance) != optimum:
        raise DynamicProgrammingError(f"El corte reconstruido cuesta {cut.cost(instance)} y no {optimum}",
                                      error_code="BACKTRACK_MISMATCH")
    return DPResult(optimum, cut, tree.size, q)


class MultiwayDPSolver(CutSolverInterface):
    """
    Solucionador del programa dinámico de patrones de conexión.
    """

    def __init__(self, config=None):
        self.config = config or settings.dp
        self.last_result: Optional[DPResult] = None

    def solve_min(self, instance: Instance) -> Tuple[int, CutSet]:
        self.last_result = solve_wgmwct(instance)
        return self.last_result.cost, self.last_result.cut

    def solve(self, instance: Instance, k: Optional[int] = None) -> ResultReport:
        """
        Resuelve y arma el reporte; con k responde si el costo óptimo es a lo sumo k.
        """
        start = time.perf_counter()
        cost, cut = self.solve_min(instance)
        if k is None:
            status = EstadoResultado.OPTIMAL
        else:
            status = EstadoResultado.YES if cost <= k else EstadoResultado.NO
        return ResultReport(
            status=status,
            mode=instance.mode,
            size=cut.size,
            cost=cost,
            cut=cut.as_one_based(instance),
            stats={'q': self.last_result.q, 'vertices': self.last_result.vertices,
                   'table_width': 1 << self.last_result.q},
            wall_time=time.perf_counter() - start,
        )


__all__ = [
    'expand_to_requests',
    'solve_gmwct_via_mct',
    'solve_gmwct_min_via_mct',
    'PreprocessedTree',
    'preprocess',
    'dp_leaf',
    'dp_one_child',
    'dp_two_children',
    'DPResult',
    'solve_wgmwct',
    'MultiwayDPSolver',
]
