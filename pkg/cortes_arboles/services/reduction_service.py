"""
Servicio de reducción.
Aplica las reglas de reducción al bosque de trabajo hasta un punto fijo y
ofrece un verificador de las propiedades de una instancia reducida.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import networkx as nx

from ..config import settings
from ..core.exceptions import BudgetExhausted, DegreeTooHighError, InfeasibleBranch
from ..utils import logger
from .aux_graph import build_Gu, components, in_some_min_cover, min_covers, min_vc_deg2
from .forest import ForestIndex, WorkingForest, build_index


# =============================================================================
# RESULTADO
# =============================================================================

class TipoResultado(Enum):
    """Resultado de una pasada de reducción."""
    CHANGED = "changed"
    FIXPOINT = "fixpoint"
    INFEASIBLE = "infeasible"


@dataclass
class ReductionOutcome:
    """Ediciones hechas por una regla o por la reducción completa."""

    kind: TipoResultado = TipoResultado.FIXPOINT
    forced_cuts: List[int] = field(default_factory=list)
    contractions: List[int] = field(default_factory=list)
    fired: Counter = field(default_factory=Counter)

    @property
    def changed(self) -> bool:
        return bool(self.forced_cuts or self.contractions)

    def absorb(self, other: 'ReductionOutcome') -> None:
        self.forced_cuts.extend(other.forced_cuts)
        self.contractions.extend(other.contractions)
        self.fired.update(other.fired)


RULE_NAMES = (
    'useless_edge',
    'unit_request',
    'even_path_cut',
    'vc_exclusion',
    'subtree_isolation',
    'closed_component_cut',
    'cross_covered_contract',
    'single_leak_contract',
    'closed_quadruple_cut',
    'grandparent_request',
)


# =============================================================================
# MARCAS POR SOLICITUD
# =============================================================================

def _requests_by_lca(forest: WorkingForest, index: ForestIndex):
    for a, b in forest.requests:
        yield a, b, index.lca(a, b)


def _used_edges(forest: WorkingForest, index: ForestIndex) -> set:
    """Vértices cuya arista al padre está en el camino de alguna solicitud."""
    used = set()
    for a, b in forest.requests:
        used.update(index.path_vertices(a, b))
    return used


def _lca_children_marks(forest: WorkingForest, index: ForestIndex) -> set:
    """Hijos del LCA hacia cada extremo de cada solicitud."""
    marked = set()
    for a, b, top in _requests_by_lca(forest, index):
        for end in (a, b):
            if end == top:
                continue
            x = end
            while index.parent(x) != top:
                x = index.parent(x)
            marked.add(x)
    return marked


def _important_deg2(forest: WorkingForest, index: ForestIndex):
    """Vértices importantes con grafo auxiliar de grado máximo 2, con su cobertura."""
    for u in forest.vertices:
        if not index.is_important(u):
            continue
        graph = build_Gu(forest, u, index)
        try:
            result = min_vc_deg2(graph)
        except DegreeTooHighError:
            continue
        yield u, graph, result


# =============================================================================
# REGLAS
# =============================================================================

def rule_useless_edge(forest: WorkingForest) -> ReductionOutcome:
    """Contrae toda arista que no está en el camino de ninguna solicitud."""
    index = build_index(forest)
    used = _used_edges(forest, index)
    outcome = ReductionOutcome()
    targets = [forest.parent_edge(v) for v in forest.vertices
               if forest.parent[v] is not None and v not in used]
    for edge in targets:
        forest.contract_edge(edge)
        outcome.contractions.append(edge)
    if outcome.changed:
        outcome.kind = TipoResultado.CHANGED
        outcome.fired['useless_edge'] += 1
    return outcome


def rule_unit_request(forest: WorkingForest) -> ReductionOutcome:
    """
    Corta toda arista cuyos extremos forman una solicitud.

    Raises:
        BudgetExhausted: Si el presupuesto no alcanza
    """
    outcome = ReductionOutcome()
    targets = sorted(eid for eid, (a, b) in forest.edge_ends.items() if forest.has_request(a, b))
    for edge in targets:
        forest.cut_edge(edge)
        outcome.forced_cuts.append(edge)
    if outcome.changed:
        outcome.kind = TipoResultado.CHANGED
        outcome.fired['unit_request'] += 1
    return outcome


def rule_subtree_isolation(forest: WorkingForest) -> ReductionOutcome:
    """Contrae uπ(u) cuando ninguna solicitud une T_u con T_π(u) - T_u (una por llamada)."""
    index = build_index(forest)
    marked = _lca_children_marks(forest, index)
    outcome = ReductionOutcome()
    for u in forest.vertices:
        if forest.parent[u] is not None and u not in marked:
            edge = forest.parent_edge(u)
            forest.contract_edge(edge)
            outcome.contractions.append(edge)
            outcome.kind = TipoResultado.CHANGED
            outcome.fired['subtree_isolation'] += 1
            break
    return outcome


def rule_even_path_cut(forest: WorkingForest) -> ReductionOutcome:
    """
    Corta la cobertura única de cada camino de longitud par >= 2.

    Raises:
        BudgetExhausted: Si el presupuesto no alcanza
    """
    index = build_index(forest)
    outcome = ReductionOutcome()
    targets = []
    for u, graph, result in _important_deg2(forest, index):
        for shape in result.shapes:
            if shape.is_path and shape.length >= 2 and shape.length % 2 == 0:
                targets.extend(forest.parent_edge(x) for x in sorted(min_covers(shape)[0]))
    for edge in targets:
        forest.cut_edge(edge)
        outcome.forced_cuts.append(edge)
    if outcome.changed:
        outcome.kind = TipoResultado.CHANGED
        outcome.fired['even_path_cut'] += 1
    return outcome


def rule_vc_exclusion(forest: WorkingForest) -> ReductionOutcome:
    """Contrae las hojas de un vértice importante que no están en ninguna cobertura mínima."""
    index = build_index(forest)
    outcome = ReductionOutcome()
    targets = []
    for u, graph, result in _important_deg2(forest, index):
        for shape in result.shapes:
            targets.extend(forest.parent_edge(x) for x in shape.sequence if not in_some_min_cover(shape, x))
    for edge in targets:
        forest.contract_edge(edge)
        outcome.contractions.append(edge)
    if outcome.changed:
        outcome.kind = TipoResultado.CHANGED
        outcome.fired['vc_exclusion'] += 1
    return outcome


def rule_closed_component_cut(forest: WorkingForest) -> ReductionOutcome:
    """
    Corta una cobertura mínima de una componente cerrada de G_u (una por llamada).

    Una componente es cerrada si tiene grado máximo 2 y ninguno de sus vértices
    tiene solicitudes fuera de ella; sus aristas al padre no sirven a nadie más.

    Raises:
        BudgetExhausted: Si el presupuesto no alcanza
    """
    index = build_index(forest)
    outcome = ReductionOutcome()
    for u in forest.vertices:
        leaves = index.leaf_children(u)
        if len(leaves) < 2:
            continue
        graph = build_Gu(forest, u, index).graph
        for comp in sorted(nx.connected_components(graph), key=min):
            if len(comp) < 2 or any(not forest.req_adj[x] <= comp for x in comp):
                continue
            sub = graph.subgraph(comp)
            if max(d for _, d in sub.degree) > 2:
                continue
            for x in sorted(min_covers(components(sub)[0])[0]):
                edge = forest.parent_edge(x)
                forest.cut_edge(edge)
                outcome.forced_cuts.append(edge)
            outcome.kind = TipoResultado.CHANGED
            outcome.fired['closed_component_cut'] += 1
            return outcome
    return outcome


def _own_cross(forest: WorkingForest, index: ForestIndex, w: int) -> bool:
    p = index.parent(w)
    return any(index.in_subtree(y, p) and not index.in_subtree(y, w) for y in forest.req_adj[w])


def _cross_children(forest: WorkingForest, index: ForestIndex, w: int) -> List[int]:
    """Hijos de w con alguna solicitud hacia T_π(w) - T_w."""
    p = index.parent(w)
    return [x for x in index.children(w)
            if any(index.in_subtree(y, p) and not index.in_subtree(y, w) for y in forest.req_adj[x])]


def covers_all_cross(forest: WorkingForest, index: ForestIndex, w: int, cap: Optional[int] = None) -> bool:
    """True si alguna cobertura mínima de G_w contiene todas las hojas con solicitudes cruzadas."""
    cap = cap if cap is not None else settings.solver.RULE6_COVER_CAP
    crossing = set(_cross_children(forest, index, w))
    graph = build_Gu(forest, w, index)
    enumerated = 0
    for shape in components(graph):
        inside = crossing & set(shape.sequence)
        covers = min_covers(shape)
        enumerated += len(covers)
        if enumerated > cap:
            return False
        if not any(inside <= cover for cover in covers):
            return False
    return True


def rule_cross_covered_contract(forest: WorkingForest) -> ReductionOutcome:
    """
    Contrae wπ(w) si w no tiene solicitudes cruzadas propias y una cobertura
    mínima de G_w contiene todas las hojas con solicitudes cruzadas (una por llamada).
    """
    index = build_index(forest)
    outcome = ReductionOutcome()
    for w, graph, result in _important_deg2(forest, index):
        if forest.parent[w] is None or _own_cross(forest, index, w):
            continue
        if covers_all_cross(forest, index, w):
            edge = forest.parent_edge(w)
            forest.contract_edge(edge)
            outcome.contractions.append(edge)
            outcome.kind = TipoResultado.CHANGED
            outcome.fired['cross_covered_contract'] += 1
            break
    return outcome


def _leaks(forest: WorkingForest, index: ForestIndex, w: int, shape, cover) -> List[Tuple[int, int]]:
    return [(x, z) for x in shape.sequence if x not in cover
            for z in sorted(forest.req_adj[x]) if not index.in_subtree(z, w)]


def single_leak(forest: WorkingForest, index: ForestIndex, w: int) -> Optional[Tuple[int, int]]:
    """
    La única solicitud saliente que deja sin cortar la mejor cobertura mínima de G_w.

    Returns:
        Optional[Tuple[int, int]]: (hoja, destino) si el mínimo de fugas es exactamente 1
    """
    found: List[Tuple[int, int]] = []
    for shape in components(build_Gu(forest, w, index)):
        best = min((_leaks(forest, index, w, shape, cover) for cover in min_covers(shape)), key=len)
        found.extend(best)
        if len(found) > 1:
            return None
    return found[0] if found else None


def rule_single_leak_contract(forest: WorkingForest) -> ReductionOutcome:
    """
    Contrae wπ(w) si w no tiene solicitudes salientes propias y una cobertura
    mínima de G_w deja una sola solicitud saliente (x, z) sin cortar, que se
    puede separar con una arista distinta de wπ(w) (una por llamada).
    """
    index = build_index(forest)
    outcome = ReductionOutcome()
    for w, graph, result in _important_deg2(forest, index):
        if forest.parent[w] is None or any(not index.in_subtree(y, w) for y in forest.req_adj[w]):
            continue
        leak = single_leak(forest, index, w)
        if leak is None:
            continue
        x, z = leak
        if index.in_subtree(x, z):
            below = x
            while index.parent(below) != z:
                below = index.parent(below)
            if below == w:
                continue
        edge = forest.parent_edge(w)
        forest.contract_edge(edge)
        outcome.contractions.append(edge)
        outcome.kind = TipoResultado.CHANGED
        outcome.fired['single_leak_contract'] += 1
        break
    return outcome


def closed_quadruple(forest: WorkingForest, index: ForestIndex, w: int) -> Optional[Tuple[int, int, int]]:
    """
    (w', u, v) si w tiene exactamente las hojas u, v con (u, v) solicitud, una
    hoja hermana w' con (w, w') solicitud, y ninguno de los cuatro tiene
    solicitudes fuera del cuarteto.
    """
    p = index.parent(w)
    kids = index.children(w)
    if p is None or len(kids) != 2 or not index.is_important(w):
        return None
    u, v = kids
    if not forest.has_request(u, v):
        return None
    for w_prime in index.leaf_children(p):
        if not forest.has_request(w, w_prime):
            continue
        quad = {w, w_prime, u, v}
        if all(forest.req_adj[x] <= quad for x in quad):
            return w_prime, u, v
    return None


def rule_closed_quadruple_cut(forest: WorkingForest) -> ReductionOutcome:
    """
    Corta w' y una de u, v en un cuarteto cerrado (una por llamada).

    Raises:
        BudgetExhausted: Si el presupuesto no alcanza
    """
    index = build_index(forest)
    outcome = ReductionOutcome()
    for w in forest.vertices:
        quad = closed_quadruple(forest, index, w)
        if quad is None:
            continue
        w_prime, u, v = quad
        for x in (w_prime, min(u, v)):
            edge = forest.parent_edge(x)
            forest.cut_edge(edge)
            outcome.forced_cuts.append(edge)
        outcome.kind = TipoResultado.CHANGED
        outcome.fired['closed_quadruple_cut'] += 1
        break
    return outcome


def rule_grandparent_request(forest: WorkingForest) -> ReductionOutcome:
    """
    Corta un hijo u de un vértice importante w si (u, π(w)) es una solicitud (una por llamada).

    Raises:
        BudgetExhausted: Si el presupuesto no alcanza
    """
    index = build_index(forest)
    outcome = ReductionOutcome()
    for w, graph, result in _important_deg2(forest, index):
        grand = forest.parent[w]
        if grand is None:
            continue
        for shape in result.shapes:
            hits = [u for u in shape.sequence if forest.has_request(u, grand) and in_some_min_cover(shape, u)]
            if hits:
                edge = forest.parent_edge(hits[0])
                forest.cut_edge(edge)
                outcome.forced_cuts.append(edge)
                outcome.kind = TipoResultado.CHANGED
                outcome.fired['grandparent_request'] += 1
                return outcome
    return outcome


RULES: List[Callable[[WorkingForest], ReductionOutcome]] = [
    rule_useless_edge,
    rule_unit_request,
    rule_even_path_cut,
    rule_vc_exclusion,
    rule_subtree_isolation,
    rule_closed_component_cut,
    rule_cross_covered_contract,
    rule_single_leak_contract,
    rule_closed_quadruple_cut,
    rule_grandparent_request,
]


# =============================================================================
# PUNTO FIJO
# =============================================================================

def reduce_to_fixpoint(forest: WorkingForest, recenter: Optional[bool] = None) -> ReductionOutcome:
    """
    Aplica las reglas en orden, reiniciando desde la primera tras cualquier edición.

    En cada punto fijo reenraiza las componentes en su centro; si alguna raíz
    cambia vuelve a reducir.

    Args:
        forest: Bosque de trabajo (se modifica en sitio)
        recenter: Reenraizar en el centro; settings.solver.RECENTER por defecto

    Returns:
        ReductionOutcome: CHANGED o FIXPOINT con todas las ediciones, o INFEASIBLE
    """
    recenter = settings.solver.RECENTER if recenter is None else recenter
    total = ReductionOutcome()
    try:
        restart = True
        while restart:
            restart = False
            for rule in RULES:
                step = rule(forest)
                if step.changed:
                    logger.debug(f"Regla {rule.__name__}: cortes={step.forced_cuts} contracciones={step.contractions}")
                    total.absorb(step)
                    restart = True
                    break
            if not restart and recenter:
                restart = forest.recenter()
    except (BudgetExhausted, InfeasibleBranch) as e:
        logger.debug(f"Reducción infactible: {e}")
        total.kind = TipoResultado.INFEASIBLE
        return total
    total.kind = TipoResultado.CHANGED if total.changed else TipoResultado.FIXPOINT
    return total


# =============================================================================
# VERIFICACIÓN
# =============================================================================

def check_reduced(forest: WorkingForest) -> List[str]:
    """
    Lista las propiedades de instancia reducida que no se cumplen.

    (i) ninguna solicitud une un vértice con su padre; (ii) para u no raíz,
    alguna solicitud une T_u con T_π(u) - T_u; (iii) todo vértice interno u
    tiene una solicitud dentro de T_u - u; (iv) todo hijo de un vértice
    importante w tiene una solicitud a un hermano; (v) G_w no tiene caminos de
    longitud par (incluida 0); (vi) toda hoja está en alguna cobertura mínima
    del grafo de su padre; (vii) para w importante no raíz, ninguna cobertura
    mínima de G_w corta todas las solicitudes cruzadas de T_w. Las propiedades
    (iv) a (vii) se evalúan donde G_w tiene grado máximo 2.

    Returns:
        List[str]: Violaciones con su número de propiedad; vacía si el bosque está reducido
    """
    index = build_index(forest)
    violations = []
    requests = forest.requests

    for v in forest.vertices:
        par = forest.parent[v]
        if par is not None and forest.has_request(v, par):
            violations.append(f"(i) solicitud entre {v} y su padre {par}")

    marked = _lca_children_marks(forest, index)
    for v in forest.vertices:
        if forest.parent[v] is not None and v not in marked:
            violations.append(f"(ii) ninguna solicitud une T_{v} con el resto de T_{forest.parent[v]}")

    for u in forest.vertices:
        if index.is_leaf(u):
            continue
        if not any(a != u and b != u and index.in_subtree(a, u) and index.in_subtree(b, u) for a, b in requests):
            violations.append(f"(iii) ninguna solicitud dentro de T_{u} - {u}")

    for w, graph, result in _important_deg2(forest, index):
        for shape in result.shapes:
            if len(shape.sequence) == 1:
                violations.append(f"(iv) la hoja {shape.sequence[0]} de {w} no tiene solicitudes a hermanos")
            if shape.is_path and shape.length % 2 == 0:
                violations.append(f"(v) camino de longitud par {shape.length} en G_{w}")
            for x in shape.sequence:
                if not in_some_min_cover(shape, x):
                    violations.append(f"(vi) la hoja {x} no está en ninguna cobertura mínima de G_{w}")
        if forest.parent[w] is not None and not _own_cross(forest, index, w) \
                and covers_all_cross(forest, index, w):
            violations.append(f"(vii) una cobertura mínima de G_{w} corta todas las solicitudes cruzadas")
    return violations


__all__ = [
    'TipoResultado',
    'ReductionOutcome',
    'RULE_NAMES',
    'rule_useless_edge',
    'rule_unit_request',
    'rule_subtree_isolation',
    'rule_even_path_cut',
    'rule_vc_exclusion',
    'rule_closed_component_cut',
    'rule_cross_covered_contract',
    'rule_single_leak_contract',
    'rule_closed_quadruple_cut',
    'rule_grandparent_request',
    'covers_all_cross',
    'single_leak',
    'closed_quadruple',
    'reduce_to_fixpoint',
    'check_reduced',
]
