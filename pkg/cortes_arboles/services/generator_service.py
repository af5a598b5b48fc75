"""
Generador determinista de instancias.

Árboles aleatorios por secuencias de Prüfer, estrellas, orugas y gadgets con
nombre que disparan reglas concretas del solucionador.
"""

from functools import partial
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from ..core.exceptions import BadSpecError
from ..core.interfaces import InstanceGeneratorInterface
from ..models import GenSpec, Instance, Modo, ModoGeneracion, build_instance
from ..utils import logger


# =============================================================================
# FORMAS DE ÁRBOL
# =============================================================================

def random_tree_edges(n_edges: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    """Árbol uniforme con n_edges aristas a partir de una secuencia de Prüfer."""
    vertices = n_edges + 1
    if vertices == 2:
        return [(0, 1)]
    sequence = [int(x) for x in rng.integers(0, vertices, size=vertices - 2)]
    tree = nx.from_prufer_sequence(sequence)
    return sorted(tuple(sorted(edge)) for edge in tree.edges)


def star_edges(n_edges: int) -> List[Tuple[int, int]]:
    return [(0, leaf) for leaf in range(1, n_edges + 1)]


def caterpillar_edges(n_edges: int) -> List[Tuple[int, int]]:
    """Espina de (n_edges + 1) // 2 vértices; las patas se reparten en orden sobre ella."""
    spine = max(1, (n_edges + 1) // 2)
    edges = [(i, i + 1) for i in range(spine - 1)]
    leg = spine
    while len(edges) < n_edges:
        edges.append(((leg - spine) % spine, leg))
        leg += 1
    return edges


def _sample_pairs(vertices: int, count: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    pairs = list(combinations(range(vertices), 2))
    if count >= len(pairs):
        return pairs
    chosen = rng.choice(len(pairs), size=count, replace=False)
    return sorted(pairs[int(i)] for i in chosen)


def _sample_terminal_sets(vertices: int, q: int, rng: np.random.Generator) -> List[List[int]]:
    sets = []
    for _ in range(q):
        size = int(rng.integers(2, min(3, vertices) + 1)) if vertices >= 2 else 1
        sets.append(sorted(int(x) for x in rng.choice(vertices, size=size, replace=False)))
    return sets


# =============================================================================
# GADGETS
# =============================================================================

def _from_parents(parents: Dict[int, int], requests: Sequence[Tuple[int, int]]) -> Instance:
    edges = [(p, c) for c, p in sorted(parents.items())]
    return build_instance(edges, requests, n=len(parents) + 1, mode=Modo.MCT)


# Cada gadget es (padres, solicitudes). Los de reducción disparan en el
# punto fijo inicial; los de raíz dejan p = 0 tras reducir; los profundos
# tienen radio 3 y la regla dispara con p = 1 bajo q = 0.
_SHAPES: Dict[str, Tuple[Dict[int, int], List[Tuple[int, int]]]] = {
    # reglas de reducción
    'useless-edge': ({1: 0, 2: 0, 3: 0}, [(1, 2)]),
    'unit-request': ({1: 0, 2: 1}, [(1, 2)]),
    'subtree-isolation': ({1: 0, 5: 0, 2: 1, 3: 2, 4: 2}, [(3, 4), (3, 5)]),
    'even-path': ({1: 0, 2: 0, 3: 0}, [(1, 2), (2, 3)]),
    'vc-exclusion': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1}, [(3, 4), (5, 2)]),
    'star-triangle': ({1: 0, 2: 0, 3: 0}, [(1, 2), (1, 3), (2, 3)]),
    'cross-covered': ({1: 0, 2: 0, 3: 1, 4: 1}, [(3, 4), (3, 2)]),
    'single-leak': ({1: 0, 2: 0, 5: 0, 3: 1, 4: 1}, [(3, 4), (3, 2), (4, 5)]),
    'special-quadruple': ({1: 0, 6: 0, 2: 1, 3: 1, 4: 2, 5: 2}, [(4, 5), (4, 3), (5, 3), (2, 3)]),
    'grandparent-request': ({1: 0, 2: 0, 3: 1, 4: 1}, [(3, 4), (3, 0), (1, 2)]),

    # ramificación sobre G_w y casos con p en la raíz
    'branch-rule-1': ({1: 0, 2: 0, 3: 0, 4: 0}, [(1, 2), (1, 3), (1, 4)]),
    'branch-rule-3': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 1},
                      [(3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (1, 2), (3, 2)]),
    'case-1': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 2, 7: 2},
               [(1, 2), (4, 5), (6, 7), (4, 3), (6, 3)]),
    'case-2': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1},
               [(4, 5), (5, 6), (4, 6), (4, 2), (1, 3)]),
    'case-2-5': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1, 7: 1},
                 [(4, 5), (5, 6), (6, 7), (4, 2), (1, 3)]),
    'case-1-5': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 2, 7: 2},
                 [(4, 5), (4, 2), (1, 3), (6, 7), (6, 3), (2, 3)]),
    'case-3-1': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1}, [(4, 5), (4, 2), (4, 3), (1, 2)]),
    'case-3-2': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 2, 7: 2},
                 [(4, 5), (4, 6), (4, 7), (1, 3), (6, 7), (2, 3)]),
    'case-4': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1, 7: 1},
               [(1, 2), (4, 5), (6, 7), (4, 3), (6, 3)]),
    'case-5-1': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1}, [(4, 5), (1, 2), (1, 3), (4, 3)]),
    'case-5-2': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1}, [(4, 5), (1, 2), (4, 3)]),
    'case-6': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1}, [(4, 5), (1, 2), (4, 2), (2, 3)]),
    'case-70': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1, 7: 1},
                [(4, 5), (6, 7), (4, 2), (5, 2), (6, 2), (7, 3)]),
    'case-7-1': ({1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1, 7: 1},
                 [(4, 5), (6, 7), (4, 2), (5, 2), (6, 3), (7, 3)]),
    'case-7-2': ({1: 0, 9: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 2, 8: 2},
                 [(5, 6), (7, 8), (3, 5), (3, 7), (4, 6), (4, 8)]),
    'case-7-3': ({1: 0, 2: 0, 3: 0, 8: 0, 4: 1, 5: 1, 6: 1, 7: 1},
                 [(4, 5), (6, 7), (4, 2), (6, 2), (5, 3), (7, 8)]),
    'case-7-4': ({1: 0, 2: 0, 3: 0, 8: 0, 9: 0, 4: 1, 5: 1, 6: 1, 7: 1},
                 [(4, 5), (6, 7), (4, 2), (5, 3), (6, 8), (7, 9)]),

    # frontera G* de p = 1, con una copia espejo bajo 2
    'gstar-even-path': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 1, 7: 3, 8: 3,
                         9: 2, 10: 2, 11: 2, 12: 2, 13: 9, 14: 9},
                        [(7, 8), (7, 4), (8, 5), (6, 4),
                         (13, 14), (13, 10), (14, 11), (12, 10), (3, 9)]),
    'gstar-odd-path': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 3, 9: 3,
                        10: 2, 11: 2, 12: 2, 13: 2, 14: 2, 15: 10, 16: 10},
                       [(8, 9), (8, 4), (9, 5), (4, 6), (6, 7),
                        (15, 16), (15, 11), (16, 12), (11, 13), (13, 14), (3, 10)]),
    'gstar-even-cycle': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 3, 7: 3,
                          8: 2, 9: 2, 10: 2, 11: 8, 12: 8},
                         [(6, 7), (6, 4), (7, 5), (4, 5),
                          (11, 12), (11, 9), (12, 10), (9, 10), (3, 8)]),
    'gstar-odd-cycle': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 3, 9: 3, 10: 4, 11: 4,
                         12: 2, 13: 2, 14: 2, 15: 2, 16: 2, 17: 12, 18: 12, 19: 13, 20: 13},
                        [(8, 9), (9, 5), (5, 10), (10, 11), (11, 6), (6, 7), (7, 8),
                         (17, 18), (18, 14), (14, 19), (19, 20), (20, 15), (15, 16), (16, 17),
                         (3, 12), (4, 13)]),

    # hermano s = 2 de p = 1 bajo q = 0; w = 3 queda atascado en p
    'case-200': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 3, 7: 3, 8: 2, 9: 2},
                 [(6, 7), (6, 4), (7, 5), (3, 2), (8, 9), (8, 4)]),
    'case-300': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 3, 7: 3, 8: 2, 9: 2, 10: 2, 11: 2},
                 [(6, 7), (6, 4), (7, 5), (3, 0), (8, 9), (9, 10), (10, 11), (8, 11),
                  (8, 4), (9, 5), (10, 4), (11, 5)]),
    'case-400': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 3, 7: 3, 8: 2, 9: 2, 10: 2, 11: 2},
                 [(6, 7), (6, 4), (7, 5), (3, 0), (8, 9), (9, 10), (10, 11),
                  (8, 4), (8, 5), (11, 4), (11, 5)]),
    'case-500': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 3, 7: 3, 8: 2, 9: 2},
                 [(6, 7), (6, 4), (7, 5), (3, 0), (8, 9), (8, 4), (8, 5), (9, 4), (9, 5)]),
    'case-600': ({1: 0, 2: 0, 3: 1, 4: 1, 5: 1, 6: 3, 7: 3, 8: 2, 9: 2, 10: 2,
                  11: 10, 12: 10, 13: 2, 14: 2},
                 [(6, 7), (6, 4), (7, 5), (3, 0), (8, 9), (8, 4), (9, 5),
                  (11, 12), (11, 13), (12, 14), (10, 0)]),
}

GADGETS: Dict[str, Callable[[], Instance]] = {
    name: partial(_from_parents, parents, requests) for name, (parents, requests) in _SHAPES.items()
}


# =============================================================================
# SERVICIO
# =============================================================================

class InstanceGeneratorService(InstanceGeneratorInterface):
    """Generador de instancias a partir de un GenSpec."""

    def list_gadgets(self) -> List[str]:
        return sorted(GADGETS)

    def generate(self, spec: GenSpec) -> Instance:
        """
        Genera una instancia determinista.

        Args:
            spec: Parámetros de generación

        Returns:
            Instance: Instancia mct, o gmwct/wgmwct si spec.q > 0

        Raises:
            BadSpecError: Si el gadget no existe
        """
        if spec.mode is ModoGeneracion.GADGET:
            builder = GADGETS.get(spec.gadget)
            if builder is None:
                raise BadSpecError(f"Gadget desconocido: {spec.gadget}", error_code="UNKNOWN_GADGET",
                                   details={'available': self.list_gadgets()})
            return builder()

        rng = np.random.default_rng(spec.seed)
        if spec.mode is ModoGeneracion.STAR:
            edges = star_edges(spec.n)
        elif spec.mode is ModoGeneracion.CATERPILLAR:
            edges = caterpillar_edges(spec.n)
        else:
            edges = random_tree_edges(spec.n, rng)
        vertices = spec.n + 1

        if spec.q > 0:
            sets = _sample_terminal_sets(vertices, spec.q, rng)
            low, high = spec.weight_range
            if (low, high) == (1, 1):
                return build_instance(edges, terminal_sets=sets, n=vertices, mode=Modo.GMWCT)
            costs = [int(c) for c in rng.integers(low, high + 1, size=len(edges))]
            return build_instance(edges, terminal_sets=sets, costs=costs, n=vertices, mode=Modo.WGMWCT)

        requests = _sample_pairs(vertices, spec.requests, rng)
        logger.debug(f"Instancia {spec.mode.value}: {vertices} vértices, {len(requests)} solicitudes")
        return build_instance(edges, requests, n=vertices, mode=Modo.MCT)


def generate(spec: GenSpec) -> Instance:
    return InstanceGeneratorService().generate(spec)


__all__ = [
    'GADGETS',
    'random_tree_edges',
    'star_edges',
    'caterpillar_edges',
    'InstanceGeneratorService',
    'generate',
]
