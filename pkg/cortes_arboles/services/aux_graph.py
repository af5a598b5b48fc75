"""
Grafos auxiliares de solicitudes.

Construye el grafo de solicitudes entre las hojas hijas de un vértice, el grafo
sobre hijos hoja y nietos de un vértice de frontera, y los analiza: cobertura
por vértices mínima en grafos de grado máximo 2, cuádruplas especiales y
clasificación estructural en grupos.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from ..core.exceptions import CaseAnalysisViolation, DegreeTooHighError, UnclassifiableComponentError
from .forest import ForestIndex, WorkingForest, build_index


# =============================================================================
# TIPOS
# =============================================================================

class TipoComponente(Enum):
    """Forma de una componente de un grafo de grado máximo 2."""
    PATH = "path"
    CYCLE = "cycle"


class Grupo(Enum):
    """Grupos estructurales de la frontera."""
    GP1 = "GP1"
    GP2 = "GP2"
    GP3 = "GP3"
    GP4 = "GP4"
    GP5 = "GP5"
    GP6 = "GP6"
    GP7 = "GP7"


@dataclass
class AuxGraph:
    """Grafo de solicitudes sobre un conjunto de vértices vivos."""

    owner: int
    graph: nx.Graph

    @classmethod
    def from_forest(cls, forest: WorkingForest, owner: int, nodes: Iterable[int]) -> 'AuxGraph':
        graph = nx.Graph()
        node_set = set(nodes)
        graph.add_nodes_from(sorted(node_set))
        for x in sorted(node_set):
            for y in forest.req_adj[x]:
                if y in node_set and x < y:
                    graph.add_edge(x, y)
        return cls(owner, graph)

    @property
    def nodes(self) -> List[int]:
        return sorted(self.graph.nodes)

    def neighbors(self, v: int) -> List[int]:
        return sorted(self.graph.adj[v])

    def degree(self, v: int) -> int:
        return self.graph.degree[v]

    def max_degree(self) -> int:
        return max((d for _, d in self.graph.degree), default=0)

    def __contains__(self, v: int) -> bool:
        return v in self.graph


@dataclass
class StarGraph(AuxGraph):
    """Grafo sobre hijos hoja y nietos de un vértice, sin miembros de cuádruplas especiales."""

    leaf_children: FrozenSet[int] = frozenset()
    grandchildren: FrozenSet[int] = frozenset()
    excluded: FrozenSet[int] = frozenset()


@dataclass(frozen=True)
class ComponentShape:
    """Camino o ciclo; los caminos empiezan en el extremo de menor id y los ciclos en su menor id."""

    kind: TipoComponente
    sequence: Tuple[int, ...]

    @property
    def length(self) -> int:
        if self.kind is TipoComponente.CYCLE:
            return len(self.sequence)
        return len(self.sequence) - 1

    @property
    def is_path(self) -> bool:
        return self.kind is TipoComponente.PATH

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.sequence[0], self.sequence[-1]


@dataclass(frozen=True)
class GroupTag:
    """Etiqueta de grupo de una componente de la frontera."""

    tag: Grupo
    members: Tuple[int, ...]
    owner_child: Optional[int] = None


@dataclass(frozen=True)
class SpecialQuadruple:
    """Cuádrupla {w, w', u, v}: w con hijos u, v y un hermano hoja w' que concentra sus solicitudes."""

    w: int
    w_prime: int
    u: int
    v: int

    @property
    def members(self) -> FrozenSet[int]:
        return frozenset((self.w, self.w_prime, self.u, self.v))

    @property
    def cut_options(self) -> Tuple[Tuple[int, int], ...]:
        """Pares de vértices cuyo corte resuelve las cuatro solicitudes de la cuádrupla."""
        return (
            (self.w_prime, min(self.u, self.v)),
            (self.w_prime, max(self.u, self.v)),
            (self.w, min(self.u, self.v)),
            (self.w, max(self.u, self.v)),
        )


@dataclass
class VertexCoverResult:
    """Cobertura mínima de un grafo de grado máximo 2 con los datos por componente."""

    size: int
    cover: FrozenSet[int]
    shapes: List[ComponentShape]
    endpoint_covers: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    even_path_covers: Dict[int, FrozenSet[int]] = field(default_factory=dict)
    cycle_covers: Dict[int, Tuple[FrozenSet[int], FrozenSet[int]]] = field(default_factory=dict)


# =============================================================================
# COMPONENTES Y COBERTURAS
# =============================================================================

def _require_deg2(graph: nx.Graph) -> None:
    worst = max((d for _, d in graph.degree), default=0)
    if worst > 2:
        raise DegreeTooHighError(f"Grado máximo {worst} > 2", error_code="DEGREE_TOO_HIGH",
                                 details={'max_degree': worst})


def _walk(graph: nx.Graph, start: int, first: Optional[int]) -> Tuple[int, ...]:
    sequence = [start]
    previous, current = start, first
    while current is not None and current != start:
        sequence.append(current)
        following = [y for y in graph.adj[current] if y != previous]
        previous, current = current, (following[0] if following else None)
    return tuple(sequence)


def components(graph) -> List[ComponentShape]:
    """
    Descompone un grafo de grado máximo 2 en caminos y ciclos.

    Raises:
        DegreeTooHighError: Si algún vértice tiene grado mayor que 2
    """
    graph = graph.graph if isinstance(graph, AuxGraph) else graph
    _require_deg2(graph)
    shapes = []
    for comp in nx.connected_components(graph):
        members = sorted(comp)
        ends = [x for x in members if graph.degree[x] <= 1]
        if ends:
            start = ends[0]
            nbrs = sorted(graph.adj[start])
            shapes.append(ComponentShape(TipoComponente.PATH, _walk(graph, start, nbrs[0] if nbrs else None)))
        else:
            start = members[0]
            shapes.append(ComponentShape(TipoComponente.CYCLE, _walk(graph, start, min(graph.adj[start]))))
    shapes.sort(key=lambda s: min(s.sequence))
    return shapes


def min_covers(shape: ComponentShape) -> List[FrozenSet[int]]:
    """Todas las coberturas mínimas de una componente; la primera contiene a sequence[0] si puede."""
    seq = shape.sequence
    m = len(seq)
    if shape.is_path:
        if m == 1:
            return [frozenset()]
        if m % 2 == 1:
            return [frozenset(seq[1::2])]
        t = m // 2
        return [frozenset([seq[2 * i + 1] for i in range(j)] + [seq[2 * i] for i in range(j, t)])
                for j in range(t + 1)]
    if m % 2 == 0:
        return [frozenset(seq[0::2]), frozenset(seq[1::2])]
    return [frozenset([seq[s], seq[(s + 1) % m]] + [seq[(s + i) % m] for i in range(3, m, 2)])
            for s in range(m)]


def cover_from_endpoint(shape: ComponentShape, endpoint: int) -> FrozenSet[int]:
    """Cobertura mínima única de un camino de longitud impar que contiene al extremo dado."""
    if not shape.is_path or len(shape.sequence) % 2 == 1:
        raise CaseAnalysisViolation("Se esperaba un camino de longitud impar", error_code="NOT_ODD_PATH")
    covers = min_covers(shape)
    if endpoint == shape.sequence[0]:
        return covers[0]
    if endpoint == shape.sequence[-1]:
        return covers[-1]
    raise CaseAnalysisViolation(f"{endpoint} no es extremo del camino", error_code="NOT_AN_ENDPOINT")


def in_some_min_cover(shape: ComponentShape, vertex: int) -> bool:
    if shape.is_path and len(shape.sequence) % 2 == 1:
        return vertex in shape.sequence[1::2]
    return True


def min_vc_deg2(graph) -> VertexCoverResult:
    """
    Cobertura por vértices mínima de un grafo con grado máximo 2.

    Returns:
        VertexCoverResult: Tamaño, una cobertura (la que contiene el primer vértice
        de cada componente cuando es posible) y las coberturas por componente

    Raises:
        DegreeTooHighError: Si algún vértice tiene grado mayor que 2
    """
    shapes = components(graph)
    cover: Set[int] = set()
    result = VertexCoverResult(0, frozenset(), shapes)
    for shape in shapes:
        covers = min_covers(shape)
        cover |= covers[0]
        if shape.is_path and len(shape.sequence) > 1:
            if len(shape.sequence) % 2 == 0:
                result.endpoint_covers[shape.sequence[0]] = covers[0]
                result.endpoint_covers[shape.sequence[-1]] = covers[-1]
            else:
                result.even_path_covers[shape.sequence[0]] = covers[0]
        elif not shape.is_path and len(shape.sequence) % 2 == 0:
            result.cycle_covers[shape.sequence[0]] = (covers[0], covers[1])
    result.size = len(cover)
    result.cover = frozenset(cover)
    return result


def cover_containing(graph, vertices: Iterable[int]) -> Optional[FrozenSet[int]]:
    """Una cobertura mínima que contiene todos los vértices dados, o None si no existe."""
    wanted = set(vertices)
    cover: Set[int] = set()
    for shape in components(graph):
        inside = wanted & set(shape.sequence)
        match = next((c for c in min_covers(shape) if inside <= c), None)
        if match is None:
            return None
        cover |= match
    return frozenset(cover)


def jointly_coverable(graph, vertices: Iterable[int]) -> bool:
    return cover_containing(graph, vertices) is not None


# =============================================================================
# CONSTRUCCIÓN SOBRE EL BOSQUE
# =============================================================================

def build_Gu(forest: WorkingForest, u: int, index: Optional[ForestIndex] = None) -> AuxGraph:
    """Grafo de solicitudes entre las hojas hijas de u."""
    index = index or build_index(forest)
    return AuxGraph.from_forest(forest, u, index.leaf_children(u))


def build_subtree_graph(forest: WorkingForest, s: int, index: Optional[ForestIndex] = None) -> AuxGraph:
    """Grafo sobre hijos hoja y nietos de s, cuádruplas incluidas."""
    index = index or build_index(forest)
    nodes = list(index.leaf_children(s))
    for c in index.children(s):
        nodes.extend(index.children(c))
    return AuxGraph.from_forest(forest, s, nodes)


def cross_partners(forest: WorkingForest, index: ForestIndex, x: int, w: int) -> List[int]:
    """Solicitudes de x hacia T_{π(w)} fuera de T_w."""
    p = index.parent(w)
    if p is None:
        return []
    return sorted(y for y in forest.req_adj[x] if index.in_subtree(y, p) and not index.in_subtree(y, w))


def detect_special_quadruples(forest: WorkingForest, p: int,
                              index: Optional[ForestIndex] = None) -> List[SpecialQuadruple]:
    """Cuádruplas especiales bajo p."""
    index = index or build_index(forest)
    found = []
    for w in index.children(p):
        kids = index.children(w)
        if not index.is_important(w) or len(kids) != 2:
            continue
        into_parent = [y for y in forest.req_adj[w] if index.in_subtree(y, p)]
        if len(into_parent) != 1:
            continue
        w_prime = into_parent[0]
        if index.parent(w_prime) != p or not index.is_leaf(w_prime) or index.in_subtree(w_prime, w):
            continue
        u, v = kids
        if cross_partners(forest, index, u, w) != [w_prime] or cross_partners(forest, index, v, w) != [w_prime]:
            continue
        if any(index.in_subtree(y, p) and not index.in_subtree(y, w) for y in forest.req_adj[w_prime]):
            continue
        found.append(SpecialQuadruple(w, w_prime, u, v))
    return found


def build_Gstar(forest: WorkingForest, p: int, index: Optional[ForestIndex] = None,
                quadruples: Optional[List[SpecialQuadruple]] = None) -> StarGraph:
    """Grafo sobre hijos hoja y nietos de p que no están en ninguna cuádrupla especial."""
    index = index or build_index(forest)
    if quadruples is None:
        quadruples = detect_special_quadruples(forest, p, index)
    excluded = frozenset().union(*(q.members for q in quadruples)) if quadruples else frozenset()
    leaf_children = frozenset(c for c in index.leaf_children(p) if c not in excluded)
    grandchildren = frozenset(g for c in index.children(p) for g in index.children(c) if g not in excluded)
    base = AuxGraph.from_forest(forest, p, leaf_children | grandchildren)
    return StarGraph(p, base.graph, leaf_children, grandchildren, excluded)


def _single_owner(index: ForestIndex, members: Iterable[int], p: int) -> Optional[int]:
    parents = {index.parent(x) for x in members}
    if len(parents) == 1:
        owner = parents.pop()
        if owner != p:
            return owner
    return None


def classify_groups(stargraph: StarGraph, forest: WorkingForest, index: Optional[ForestIndex] = None,
                    quadruples: Optional[List[SpecialQuadruple]] = None) -> List[GroupTag]:
    """
    Etiqueta cada componente del grafo de frontera con su grupo GP1..GP7.

    Raises:
        UnclassifiableComponentError: Si una componente no encaja en ningún grupo
    """
    index = index or build_index(forest)
    p = stargraph.owner
    try:
        shapes = components(stargraph)
    except DegreeTooHighError as e:
        raise UnclassifiableComponentError(str(e), error_code="UNCLASSIFIABLE") from e

    tags = []
    for shape in shapes:
        seq = shape.sequence
        owner = _single_owner(index, seq, p)
        if shape.is_path and shape.length == 1:
            if owner is not None:
                tags.append(GroupTag(Grupo.GP1, seq, owner))
            elif all(x in stargraph.leaf_children for x in seq):
                tags.append(GroupTag(Grupo.GP2, seq))
            else:
                raise UnclassifiableComponentError(f"Arista {seq} fuera de todo grupo", error_code="UNCLASSIFIABLE")
        elif shape.is_path and shape.length == 3:
            tags.append(GroupTag(Grupo.GP7, seq, owner) if owner is not None else GroupTag(Grupo.GP3, seq))
        elif not shape.is_path and owner is not None:
            tags.append(GroupTag(Grupo.GP7, seq, owner))
        elif not shape.is_path and shape.length == 3:
            tags.append(GroupTag(Grupo.GP4, seq))
        elif not shape.is_path and shape.length == 5:
            tags.append(GroupTag(Grupo.GP5, seq))
        else:
            raise UnclassifiableComponentError(
                f"Componente {shape.kind.value} de longitud {shape.length} sin grupo",
                error_code="UNCLASSIFIABLE", details={'sequence': list(seq)})

    for quad in quadruples if quadruples is not None else detect_special_quadruples(forest, p, index):
        tags.append(GroupTag(Grupo.GP6, (quad.w, quad.w_prime, quad.u, quad.v), quad.w))
    return tags


__all__ = [
    'TipoComponente',
    'Grupo',
    'AuxGraph',
    'StarGraph',
    'ComponentShape',
    'GroupTag',
    'SpecialQuadruple',
    'VertexCoverResult',
    'components',
    'min_covers',
    'cover_from_endpoint',
    'in_some_min_cover',
    'min_vc_deg2',
    'cover_containing',
    'jointly_coverable',
    'build_Gu',
    'build_subtree_graph',
    'cross_partners',
    'detect_special_quadruples',
    'build_Gstar',
    'classify_groups',
]
