"""
Oráculos de fuerza bruta.

Enumeran subconjuntos de aristas (o de vértices) en orden de tamaño y luego
lexicográfico; sirven como verdad de referencia en las pruebas diferenciales.
"""

import time
from itertools import combinations
from typing import List, Optional, Tuple

import networkx as nx

from ..config import settings
from ..core.exceptions import TooLargeError
from ..core.interfaces import CutSolverInterface
from ..models import CutSet, EstadoResultado, Instance, ResultReport
from .aux_graph import AuxGraph


def _path_masks(instance: Instance) -> List[int]:
    """Máscara de bits de las aristas del camino de cada solicitud."""
    graph = instance.as_graph()
    masks = []
    for u, v in sorted(instance.requests):
        path = nx.shortest_path(graph, u, v)
        mask = 0
        for a, b in zip(path, path[1:]):
            mask |= 1 << graph.edges[a, b]['id']
        masks.append(mask)
    return masks


def brute_force_min_cut(instance: Instance) -> Tuple[int, CutSet]:
    """
    Corte mínimo por enumeración exhaustiva.

    Sin costos devuelve el primer subconjunto separador por tamaño y orden
    lexicográfico; con costos recorre todos y conserva el más barato (el primero
    en ese mismo orden ante empates).

    Args:
        instance: Instancia de cualquier modo

    Returns:
        Tuple[int, CutSet]: Tamaño (o costo) mínimo y el corte

    Raises:
        TooLargeError: Si la instancia tiene más aristas que settings.oracle.MAX_EDGES
    """
    m = len(instance.edges)
    if m > settings.oracle.MAX_EDGES:
        raise TooLargeError(f"{m} aristas superan el límite del oráculo ({settings.oracle.MAX_EDGES})",
                            error_code="TOO_LARGE", details={'edges': m})
    masks = _path_masks(instance)

    def separates(subset: Tuple[int, ...]) -> bool:
        chosen = 0
        for e in subset:
            chosen |= 1 << e
        return all(chosen & mask for mask in masks)

    if instance.costs is None:
        for size in range(m + 1):
            for subset in combinations(range(m), size):
                if separates(subset):
                    return size, CutSet.of(subset)

    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for size in range(m + 1):
        for subset in combinations(range(m), size):
            cost = sum(instance.edge_cost(e) for e in subset)
            if (best is None or cost < best[0]) and separates(subset):
                best = (cost, subset)
    return best[0], CutSet.of(best[1])


def brute_force_vc(graph) -> int:
    """
    Tamaño de una cobertura por vértices mínima por enumeración.

    Raises:
        TooLargeError: Si el grafo tiene más de settings.oracle.MAX_VC_VERTICES vértices
    """
    graph = graph.graph if isinstance(graph, AuxGraph) else graph
    nodes = sorted(graph.nodes)
    if len(nodes) > settings.oracle.MAX_VC_VERTICES:
        raise TooLargeError(f"{len(nodes)} vértices superan el límite del oráculo",
                            error_code="TOO_LARGE", details={'vertices': len(nodes)})
    edges = list(graph.edges)
    for size in range(len(nodes) + 1):
        for subset in combinations(nodes, size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in edges):
                return size
    return len(nodes)


class BruteForceSolver(CutSolverInterface):
    """Envoltura del oráculo con la interfaz de los solucionadores."""

    def solve_min(self, instance: Instance) -> Tuple[int, CutSet]:
        return brute_force_min_cut(instance)

    def solve(self, instance: Instance, k: Optional[int] = None) -> ResultReport:
        start = time.perf_counter()
        value, cut = self.solve_min(instance)
        if k is None:
            status = EstadoResultado.OPTIMAL
        else:
            status = EstadoResultado.YES if value <= k else EstadoResultado.NO
        return ResultReport(
            status=status,
            mode=instance.mode,
            size=cut.size,
            cost=cut.cost(instance),
            cut=cut.as_one_based(instance),
            stats={'edges': len(instance.edges), 'requests': len(instance.requests)},
            wall_time=time.perf_counter() - start,
        )


__all__ = [
    'brute_force_min_cut',
    'brute_force_vc',
    'BruteForceSolver',
]
