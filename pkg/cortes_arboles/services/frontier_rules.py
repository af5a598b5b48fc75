"""
Fase de frontera y fase entre subárboles.

Cuando ningún caso sobre los hijos importantes de p aplica, se ramifica sobre
el grafo G* de p (hijos hoja y nietos) y después sobre los hijos de q = π(p).
Si nada aplica queda la ramificación genérica sobre el camino de solicitud más
corto.
"""

from typing import Callable, Dict, List, Optional, Tuple

from ..core.exceptions import DegreeTooHighError, UnclassifiableComponentError
from ..models import CutSet, Instance, Modo, build_instance
from ..utils import logger
from .aux_graph import (
    ComponentShape,
    TipoComponente,
    build_Gstar,
    classify_groups,
    components,
    cover_from_endpoint,
    min_covers,
)
from .branch_rules import BranchPlan, ForestView, SideBuilder, make_plan


ComponentSolver = Callable[[Instance], Optional[CutSet]]


# =============================================================================
# PROPIEDADES DE FRONTERA
# =============================================================================

def frontier_properties_hold(view: ForestView, p: int) -> bool:
    """
    Comprueba que la frontera de p tiene la forma que la fase G* presupone.

    Returns:
        bool: True si se cumplen las cuatro propiedades y G* tiene grado máximo 2
    """
    excluded = set().union(*(q.members for q in view.quadruples(p))) if view.quadruples(p) else set()
    for c in view.children(p):
        if c in excluded:
            continue
        if view.is_leaf(c):
            local = [y for y in view.partners(c, p) if y != c and (
                (view.parent(y) == p and view.is_leaf(y))
                or (view.parent(y) is not None and view.parent(view.parent(y)) == p))]
            if len(local) > 2:
                return False
            continue
        if view.cross(c, c):
            return False
        result = view.vc(c)
        if result is None:
            return False
        double_edges = 0
        for shape in result.shapes:
            crossing = [x for x in shape.sequence if view.cross(x, c)]
            if shape.is_path and shape.length == 1:
                if any(len(view.cross(x, c)) > 1 for x in shape.sequence):
                    return False
                double_edges += len(crossing) == 2
            elif (shape.is_path and shape.length == 3) or not shape.is_path:
                if crossing:
                    return False
            else:
                return False
        if double_edges != 1:
            return False
    try:
        return build_Gstar(view.forest, p, view.index, view.quadruples(p)).max_degree() <= 2
    except DegreeTooHighError:
        return False


# =============================================================================
# FASE G*
# =============================================================================

def _oriented_cycle(view: ForestView, shape: ComponentShape, p: int) -> Optional[Tuple[int, ...]]:
    seq = shape.sequence
    leaves = [x for x in seq if view.parent(x) == p]
    if not leaves:
        return None
    start = min(leaves)
    i = seq.index(start)
    m = len(seq)
    forward = tuple(seq[(i + j) % m] for j in range(m))
    backward = tuple(seq[(i - j) % m] for j in range(m))
    return forward if forward[1] < backward[1] else backward


def _odd_cycle_plan(view: ForestView, shape: ComponentShape, p: int) -> Optional[BranchPlan]:
    cycle = _oriented_cycle(view, shape, p)
    if cycle is None:
        return None
    u1, u2, u3, last = cycle[0], cycle[1], cycle[2], cycle[-1]

    keep_u1 = SideBuilder(view).keep(u1)
    for nbr in (u2, last):
        if view.parent(nbr) != p:
            keep_u1.favor(nbr, (view.parent(nbr),))
    keep_u1.cut(u2).cut(last)

    tail = ComponentShape(TipoComponente.PATH, cycle[1:])
    tail_cover = cover_from_endpoint(tail, u2)
    cut_u2 = SideBuilder(view).cut(u1).cut_all(tail_cover)
    for x in cycle[1:]:
        if x not in tail_cover:
            cut_u2.keep(x)

    return make_plan('gstar_odd_cycle', [keep_u1, cut_u2, SideBuilder(view).cut(u1).cut(u3)])


def gstar_phase(view: ForestView, p: int) -> Optional[BranchPlan]:
    """
    Ramifica sobre las componentes de G* de p.

    Returns:
        Optional[BranchPlan]: Plan para la primera componente que lo admite
    """
    if view.parent(p) is None or not frontier_properties_hold(view, p):
        return None
    quads = view.quadruples(p)
    star = build_Gstar(view.forest, p, view.index, quads)
    try:
        tags = classify_groups(star, view.forest, view.index, quads)
        logger.debug(f"Grupos de la frontera en {p}: {[t.tag.value for t in tags]}")
    except UnclassifiableComponentError as e:
        logger.debug(f"Frontera de {p} sin clasificar: {e}")

    for shape in components(star):
        seq = shape.sequence
        if shape.is_path and shape.length >= 2 and shape.length % 2 == 0:
            return make_plan('gstar_even_path', [SideBuilder(view).cut_all(seq[1::2])])
        if shape.is_path and shape.length >= 5:
            cover = min_covers(shape)[0]
            first = SideBuilder(view).cut_all(cover)
            for x in seq:
                if x not in cover:
                    first.keep(x)
            return make_plan('gstar_odd_path', [first, SideBuilder(view).cut(seq[1])])
        if not shape.is_path and shape.length % 2 == 0:
            return make_plan('gstar_even_cycle', [
                SideBuilder(view).cut_all(seq[0::2]),
                SideBuilder(view).cut_all(seq[1::2]),
            ])
        if not shape.is_path and shape.length >= 7:
            owners = {view.parent(x) for x in seq}
            if len(owners) == 1 and p not in owners:
                continue
            plan = _odd_cycle_plan(view, shape, p)
            if plan is not None:
                return plan
    return None


# =============================================================================
# FASE ENTRE SUBÁRBOLES
# =============================================================================

def _subtree(view: ForestView, s: int) -> List[int]:
    order, stack = [], [s]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(reversed(view.children(x)))
    return order


def subtree_instance(view: ForestView, s: int) -> Tuple[Instance, List[int]]:
    """
    Instancia independiente formada por T_s y sus solicitudes internas.

    Returns:
        Tuple[Instance, List[int]]: Instancia y el id original de cada una de sus aristas
    """
    members = _subtree(view, s)
    label: Dict[int, int] = {x: i for i, x in enumerate(members)}
    edges, edge_map = [], []
    for x in members[1:]:
        edges.append((label[view.parent(x)], label[x]))
        edge_map.append(view.edge(x))
    requests = {(label[x], label[y]) for x in members for y in view.forest.req_adj[x]
                if y in label and label[x] < label[y]}
    return build_instance(edges, requests, n=len(members), mode=Modo.MCT), edge_map


def _keep_under(view: ForestView, s: int, u: int) -> SideBuilder:
    return SideBuilder(view).favor(u, (s,)).keep(u)


def _important_sibling_cases(view: ForestView, q: int, s: int) -> Optional[BranchPlan]:
    result = view.vc(s)
    if result is None:
        return None
    graph = view.G(s)

    own = view.partners(s, q, s)
    if own:
        for z in graph.nodes:
            theirs = view.partners(z, q, s)
            if theirs:
                keep = _keep_under(view, s, z).cut_all(graph.neighbors(z)).kill(own + theirs, {z, s, q})
                return make_plan('case_200', [keep, SideBuilder(view).cut(z)])

    for u in graph.nodes:
        theirs = view.partners(u, q, s)
        if graph.degree(u) == 2 and theirs:
            keep = _keep_under(view, s, u).cut_all(graph.neighbors(u)).kill(theirs, {u, s, q})
            return make_plan('case_300', [SideBuilder(view).cut(u), keep])

    for shape in result.shapes:
        if shape.is_path and shape.length == 3:
            for seq in (shape.sequence, shape.sequence[::-1]):
                u, u1, u2, _ = seq
                theirs = view.partners(u, q, s)
                if theirs:
                    keep = _keep_under(view, s, u).cut(u1).kill(theirs, {u, s, q})
                    return make_plan('case_400', [SideBuilder(view).cut(u).cut(u2), keep])

    for shape in result.shapes:
        if shape.is_path and shape.length == 1:
            for u, v in (shape.sequence, shape.sequence[::-1]):
                theirs = view.partners(u, q, s)
                if theirs:
                    keep = _keep_under(view, s, u).cut(v).kill(theirs, {u, s, q})
                    return make_plan('case_500', [SideBuilder(view).cut(u).keep(v), keep])
    return None


def case_600(view: ForestView, q: int, solve_component: Optional[ComponentSolver]) -> Optional[BranchPlan]:
    if solve_component is None:
        return None
    for s in view.children(q):
        if view.is_leaf(s) or view.is_important(s):
            continue
        leaves = view.index.leaf_children(s)
        for u in leaves:
            for v in leaves:
                if not (u < v and view.forest.has_request(u, v)):
                    continue
                pu, pv = view.partners(u, q, s), view.partners(v, q, s)
                if not (pu and pv):
                    continue
                sub, edge_map = subtree_instance(view, s)
                inner = solve_component(sub)
                detach = SideBuilder(view).cut(s)
                if inner is None:
                    detach.valid = False
                else:
                    for e in inner:
                        detach.cut(view.forest.child_of_edge(edge_map[e]))
                keep_u = SideBuilder(view).keep(s).keep(u).cut(v).kill(pu, {u, s, q})
                cut_u = SideBuilder(view).keep(s).cut(u)
                return make_plan('case_600', [detach, keep_u, cut_u])
    return None


def intertree_phase(view: ForestView, p: int,
                    solve_component: Optional[ComponentSolver] = None) -> Optional[BranchPlan]:
    """
    Casos 200-600 sobre los hijos de q = π(p).

    Un hijo s de q sin solicitudes hacia T_q - T_s ya fue contraído por el
    aislamiento de subárboles.

    Args:
        view: Vista del bosque
        p: Padre del vértice importante elegido
        solve_component: Solucionador de mínimo para subárboles desprendidos

    Returns:
        Optional[BranchPlan]: Primer plan aplicable
    """
    q = view.parent(p)
    if q is None:
        return None
    for s in view.children(q):
        if view.is_important(s):
            plan = _important_sibling_cases(view, q, s)
            if plan is not None:
                return plan
    return case_600(view, q, solve_component)


# =============================================================================
# RAMIFICACIÓN GENÉRICA
# =============================================================================

def generic_branch(view: ForestView, rule: str) -> Optional[BranchPlan]:
    """
    Ramifica sobre el camino de solicitud vivo más corto.

    El lado i conserva las primeras i-1 aristas del camino y corta la i-ésima.
    """
    best = None
    for a, b in sorted(view.forest.requests):
        path = view.index.path_vertices(a, b)
        if best is None or len(path) < len(best):
            best = path
    if not best:
        return None
    builders = []
    for i, x in enumerate(best):
        side = SideBuilder(view)
        for y in best[:i]:
            side.keep(y)
        builders.append(side.cut(x))
    return make_plan(rule, builders)


__all__ = [
    'ComponentSolver',
    'frontier_properties_hold',
    'gstar_phase',
    'subtree_instance',
    'intertree_phase',
    'generic_branch',
]
