"""
Modelos de datos del solucionador de cortes en árboles.
Define las estructuras de datos principales: instancias, cortes, bitácoras de
edición, estadísticas de búsqueda y reportes de resultado.
"""

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..core.exceptions import (
    BadSpecError,
    BadVertexIdError,
    NotATreeError,
    SelfRequestError,
    ValidationError,
)


Par = Tuple[int, int]


# =============================================================================
# ENUMERACIONES
# =============================================================================

class Modo(Enum):
    """Modos de problema soportados."""
    MCT = "mct"
    GMWCT = "gmwct"
    WGMWCT = "wgmwct"


class TipoEdicion(Enum):
    """Ediciones registradas sobre el bosque de trabajo."""
    CUT = "cut"
    CONTRACT = "contract"
    FAVOR = "favor"
    RECENTER = "recenter"


class EstadoResultado(Enum):
    """Estado reportado por la CLI."""
    YES = "yes"
    NO = "no"
    OPTIMAL = "optimal"
    VALID = "valid"
    INVALID = "invalid"
    REDUCED = "reduced"
    GENERATED = "generated"


class ModoGeneracion(Enum):
    """Familias de instancias del generador."""
    RANDOM_TREE = "random-tree"
    STAR = "star"
    CATERPILLAR = "caterpillar"
    GADGET = "gadget"


# =============================================================================
# MODELO BASE
# =============================================================================

def _to_plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, Counter):
        return dict(sorted(value.items()))
    if isinstance(value, dict):
        return {str(k): _to_plain(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [_to_plain(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_to_plain(v) for v in value]
    return value


class BaseModel:
    """Modelo base con serialización común."""

    def to_dict(self) -> Dict[str, Any]:
        """Convierte el modelo a diccionario."""
        return {key: _to_plain(value) for key, value in self.__dict__.items()}

    def to_json(self) -> str:
        """Convierte el modelo a JSON."""
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    def save_to_file(self, filepath: Union[str, Path]):
        """Guarda el modelo en un archivo JSON."""
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self.to_json())


def normalize_pair(u: int, v: int) -> Par:
    """Par no ordenado normalizado como (min, max)."""
    return (u, v) if u < v else (v, u)


def expand_pairs(terminal_sets: Iterable[Iterable[int]]) -> FrozenSet[Par]:
    """Todos los pares distintos dentro de cada conjunto, sin duplicados entre conjuntos."""
    pairs = set()
    for terminal_set in terminal_sets:
        for u, v in combinations(sorted(set(terminal_set)), 2):
            pairs.add((u, v))
    return frozenset(pairs)


# =============================================================================
# INSTANCIA
# =============================================================================

@dataclass(frozen=True)
class Instance(BaseModel):
    """
    Enunciado inmutable de un problema de corte en árbol.

    Los ids de vértice son internos (base 0). En los modos gmwct/wgmwct las
    solicitudes se derivan de los conjuntos de terminales.
    """

    n: int
    edges: Tuple[Par, ...]
    requests: FrozenSet[Par]
    mode: Modo = Modo.MCT
    terminal_sets: Optional[Tuple[FrozenSet[int], ...]] = None
    costs: Optional[Tuple[int, ...]] = None
    k: Optional[int] = None

    @property
    def q(self) -> int:
        return len(self.terminal_sets) if self.terminal_sets else 0

    def edge_cost(self, edge_id: int) -> int:
        return self.costs[edge_id] if self.costs is not None else 1

    def edge_index(self) -> Dict[Par, int]:
        return {edge: i for i, edge in enumerate(self.edges)}

    def with_k(self, k: Optional[int]) -> 'Instance':
        return Instance(self.n, self.edges, self.requests, self.mode, self.terminal_sets, self.costs, k)

    def as_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for i, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, id=i, cost=self.edge_cost(i))
        return graph


def build_instance(
    edges: Sequence[Tuple[int, int]],
    requests: Optional[Iterable[Tuple[int, int]]] = None,
    *,
    terminal_sets: Optional[Sequence[Iterable[int]]] = None,
    k: Optional[int] = None,
    costs: Optional[Sequence[int]] = None,
    n: Optional[int] = None,
    mode: Optional[Modo] = None,
) -> Instance:
    """
    Valida y construye una instancia.

    Args:
        edges: Aristas del árbol como pares de ids base 0
        requests: Solicitudes (modo mct)
        terminal_sets: Conjuntos de terminales (modos gmwct/wgmwct)
        k: Parámetro opcional
        costs: Costos enteros no negativos por arista (solo wgmwct)
        n: Número de vértices; si falta se infiere del mayor id
        mode: Modo explícito; si falta se infiere de las entradas

    Returns:
        Instance: Instancia validada

    Raises:
        NotATreeError: Si las aristas tienen un ciclo o desconectan
        BadVertexIdError: Si algún id está fuera de rango
        SelfRequestError: Si existe una solicitud (u, u)
        ValidationError: Si se mezclan modos de entrada o los costos son inválidos
    """
    edges = [tuple(edge) for edge in edges]
    if requests is not None and terminal_sets is not None:
        requests = list(requests)
        if requests:
            raise ValidationError("Solicitudes y conjuntos de terminales son mutuamente excluyentes",
                                  error_code="MIXED_INPUT_MODES")

    if n is None:
        ids = [x for edge in edges for x in edge]
        ids += [x for pair in (requests or []) for x in pair]
        ids += [x for s in (terminal_sets or []) for x in s]
        n = max(ids) + 1 if ids else 1

    if n < 1:
        raise ValidationError("El árbol necesita al menos un vértice", error_code="EMPTY_TREE")

    def check_id(x: int, where: str) -> None:
        if not isinstance(x, int) or x < 0 or x >= n:
            raise BadVertexIdError(f"Vértice {x} fuera de rango en {where}",
                                   error_code="BAD_VERTEX_ID", details={'vertex': x, 'n': n})

    normalized_edges = []
    for u, v in edges:
        check_id(u, "aristas")
        check_id(v, "aristas")
        if u == v:
            raise NotATreeError(f"Lazo en el vértice {u}", error_code="NOT_A_TREE")
        normalized_edges.append(normalize_pair(u, v))

    if len(set(normalized_edges)) != len(normalized_edges) or len(normalized_edges) != n - 1:
        raise NotATreeError(f"Se esperaban {n - 1} aristas distintas y hay {len(set(normalized_edges))}",
                            error_code="NOT_A_TREE")
    if n > 1:
        graph = nx.Graph(normalized_edges)
        graph.add_nodes_from(range(n))
        if not nx.is_tree(graph):
            raise NotATreeError("Las aristas contienen un ciclo o no son conexas", error_code="NOT_A_TREE")

    if mode is None:
        if costs is not None:
            mode = Modo.WGMWCT
        elif terminal_sets is not None:
            mode = Modo.GMWCT
        else:
            mode = Modo.MCT

    frozen_sets = None
    if terminal_sets is not None:
        frozen_sets = []
        for s in terminal_sets:
            for x in s:
                check_id(x, "conjuntos de terminales")
            frozen_sets.append(frozenset(s))
        frozen_sets = tuple(frozen_sets)
        request_set = expand_pairs(frozen_sets)
    else:
        if mode is not Modo.MCT:
            raise ValidationError(f"El modo {mode.value} requiere conjuntos de terminales",
                                  error_code="MISSING_TERMINAL_SETS")
        pairs = set()
        for u, v in (requests or []):
            check_id(u, "solicitudes")
            check_id(v, "solicitudes")
            if u == v:
                raise SelfRequestError(f"Solicitud ({u}, {u})", error_code="SELF_REQUEST")
            pairs.add(normalize_pair(u, v))
        request_set = frozenset(pairs)

    frozen_costs = None
    if costs is not None:
        if mode is not Modo.WGMWCT:
            raise ValidationError("Los costos solo se admiten en modo wgmwct", error_code="COSTS_NOT_ALLOWED")
        if len(costs) != len(normalized_edges) or any((not isinstance(c, int)) or c < 0 for c in costs):
            raise ValidationError("Se requiere un costo entero no negativo por arista", error_code="BAD_COSTS")
        frozen_costs = tuple(costs)

    if k is not None and k < 0:
        raise ValidationError("k debe ser no negativo", error_code="NEGATIVE_K")

    return Instance(n, tuple(normalized_edges), request_set, mode, frozen_sets, frozen_costs, k)


# =============================================================================
# CORTES Y VERIFICACIÓN
# =============================================================================

@dataclass(frozen=True)
class CutSet(BaseModel):
    """Conjunto de ids de aristas originales."""

    edges: FrozenSet[int] = frozenset()

    @classmethod
    def of(cls, edge_ids: Iterable[int]) -> 'CutSet':
        return cls(frozenset(edge_ids))

    @property
    def size(self) -> int:
        return len(self.edges)

    def cost(self, instance: Instance) -> int:
        return sum(instance.edge_cost(e) for e in self.edges)

    def as_pairs(self, instance: Instance) -> List[Par]:
        return [instance.edges[e] for e in sorted(self.edges)]

    def as_one_based(self, instance: Instance) -> List[List[int]]:
        """Pares de extremos con ids base 1, como en los archivos."""
        return [[u + 1, v + 1] for u, v in self.as_pairs(instance)]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.edges))

    def __len__(self) -> int:
        return len(self.edges)


def verify_cut(instance: Instance, cutset: Union[CutSet, Iterable[int]]) -> bool:
    """
    Comprueba que el corte separa todas las solicitudes.

    Args:
        instance: Instancia original
        cutset: Corte (CutSet o ids de aristas)

    Returns:
        bool: True si ningún par solicitado queda conectado en T - corte
    """
    removed = set(cutset.edges if isinstance(cutset, CutSet) else cutset)
    graph = nx.Graph()
    graph.add_nodes_from(range(instance.n))
    graph.add_edges_from(edge for i, edge in enumerate(instance.edges) if i not in removed)

    label = {}
    for index, component in enumerate(nx.connected_components(graph)):
        for vertex in component:
            label[vertex] = index
    return all(label[u] != label[v] for u, v in instance.requests)


# =============================================================================
# BITÁCORA DE EDICIONES
# =============================================================================

@dataclass(frozen=True)
class Edit(BaseModel):
    """Una edición aplicada al bosque de trabajo."""

    kind: TipoEdicion
    edge: Optional[int] = None
    vertex: Optional[int] = None
    chain: Tuple[int, ...] = ()
    node_id: int = 0


@dataclass
class EditLog(BaseModel):
    """Lista ordenada de ediciones; reproducirla sobre la instancia recrea el bosque."""

    edits: List[Edit] = field(default_factory=list)

    def append(self, edit: Edit) -> None:
        self.edits.append(edit)

    def copy(self) -> 'EditLog':
        return EditLog(list(self.edits))

    def count(self, kind: TipoEdicion) -> int:
        return sum(1 for edit in self.edits if edit.kind is kind)

    def __iter__(self) -> Iterator[Edit]:
        return iter(self.edits)

    def __len__(self) -> int:
        return len(self.edits)


# =============================================================================
# ESTADÍSTICAS Y REPORTES
# =============================================================================

@dataclass
class SearchStats(BaseModel):
    """Contadores del árbol de búsqueda."""

    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    rule_counts: Counter = field(default_factory=Counter)
    fallback_count: int = 0
    signature_shortfalls: int = 0
    initial_k: Optional[int] = None
    worst_branching_number: float = 1.0

    def record_rule(self, name: str) -> None:
        self.rule_counts[name] += 1

    def merge(self, other: 'SearchStats') -> 'SearchStats':
        """Fusión asociativa; max_depth y número de ramificación toman el máximo."""
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.max_depth = max(self.max_depth, other.max_depth)
        self.rule_counts.update(other.rule_counts)
        self.fallback_count += other.fallback_count
        self.signature_shortfalls += other.signature_shortfalls
        self.worst_branching_number = max(self.worst_branching_number, other.worst_branching_number)
        return self


@dataclass
class ResultReport(BaseModel):
    """Registro estructurado que la CLI emite como JSON."""

    status: EstadoResultado
    mode: Modo
    size: Optional[int] = None
    cost: Optional[int] = None
    cut: List[List[int]] = field(default_factory=list)
    stats: Dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0


# =============================================================================
# ESPECIFICACIÓN DE GENERACIÓN
# =============================================================================

@dataclass(frozen=True)
class GenSpec(BaseModel):
    """Parámetros deterministas del generador de instancias."""

    seed: int = 0
    n: int = 8
    requests: int = 4
    mode: ModoGeneracion = ModoGeneracion.RANDOM_TREE
    gadget: Optional[str] = None
    weight_range: Tuple[int, int] = (1, 1)
    q: int = 0

    def __post_init__(self):
        """Validaciones post-inicialización."""
        if self.n < 1:
            raise BadSpecError("Se necesita al menos una arista", error_code="BAD_SPEC")
        if self.requests < 0 or self.q < 0:
            raise BadSpecError("Conteos negativos", error_code="BAD_SPEC")
        low, high = self.weight_range
        if low < 0 or high < low:
            raise BadSpecError(f"Rango de pesos inválido {self.weight_range}", error_code="BAD_SPEC")
        if self.mode is ModoGeneracion.GADGET and not self.gadget:
            raise BadSpecError("El modo gadget requiere un nombre", error_code="BAD_SPEC")


__all__ = [
    # Enumeraciones
    'Modo',
    'TipoEdicion',
    'EstadoResultado',
    'ModoGeneracion',

    # Modelos
    'BaseModel',
    'Instance',
    'CutSet',
    'Edit',
    'EditLog',
    'SearchStats',
    'ResultReport',
    'GenSpec',

    # Operaciones
    'Par',
    'normalize_pair',
    'expand_pairs',
    'build_instance',
    'verify_cut',
]
