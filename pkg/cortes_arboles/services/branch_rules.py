"""
Reglas de ramificación sobre el vértice importante más lejano.

Cada regla produce un BranchPlan: una lista de lados, y cada lado es una lista
ordenada de ediciones (cortar, conservar, favorecer) sobre ids de aristas
originales. Un plan de un solo lado es una acción forzada.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..core.exceptions import DegreeTooHighError
from ..utils import logger
from .aux_graph import (
    AuxGraph,
    ComponentShape,
    SpecialQuadruple,
    VertexCoverResult,
    build_Gu,
    cover_containing,
    detect_special_quadruples,
    jointly_coverable,
    min_covers,
    min_vc_deg2,
)
from .forest import ForestIndex, WorkingForest, build_index


# =============================================================================
# EDICIONES Y PLANES
# =============================================================================

class AccionLado(Enum):
    """Ediciones que puede contener un lado de una ramificación."""
    CUT = "cut"
    KEEP = "keep"
    FAVOR = "favor"


@dataclass(frozen=True)
class SideEdit:
    """Edición sobre una arista original; FAVOR guarda la cadena que se conserva con ella."""

    kind: AccionLado
    edge: int
    chain: Tuple[int, ...] = ()


Side = Tuple[SideEdit, ...]


# Decremento mínimo de k que cada lado garantiza, en el orden de los lados
RULE_SIGNATURES: Dict[str, Tuple[int, ...]] = {
    'branch_rule_1': (1, 3),
    'branch_rule_3': (3, 1),
    'case_1': (2, 2),
    'case_2': (1, 3),
    'case_2_5': (2, 2),
    'case_1_5': (1, 3),
    'case_3_1': (1, 3),
    'case_3_2': (1, 3),
    'case_4': (3, 1),
    'case_5_1': (2, 2),
    'case_5_2': (1, 3),
    'case_6': (1, 3),
    'case_70': (1, 3),
    'case_7_1': (1, 3),
    'case_7_2': (3, 3, 3),
    'case_7_3': (4, 4, 4, 2),
    'case_7_4': (4, 4, 4, 2),
    'gstar_odd_path': (3, 1),
    'gstar_even_cycle': (2, 2),
    'gstar_odd_cycle': (2, 4, 2),
    'case_200': (3, 1),
    'case_300': (1, 3),
    'case_400': (2, 2),
    'case_500': (1, 2),
    'case_600': (2, 2, 1),
}


@dataclass
class BranchPlan:
    """Regla que disparó y sus lados, en el orden en que se exploran."""

    rule: str
    sides: List[Side] = field(default_factory=list)
    declared: Tuple[Optional[int], ...] = ()

    @property
    def literal_cuts(self) -> Tuple[int, ...]:
        return tuple(sum(1 for edit in side if edit.kind is AccionLado.CUT) for side in self.sides)

    @property
    def signature(self) -> Tuple[int, ...]:
        """Decremento declarado de cada lado; los cortes literales si la regla no declara firma."""
        if len(self.declared) != len(self.sides) or None in self.declared:
            return self.literal_cuts
        return tuple(self.declared)

    @property
    def forced(self) -> bool:
        return len(self.sides) == 1


# =============================================================================
# VISTA DEL BOSQUE
# =============================================================================

class ForestView:
    """Instantánea de consulta de un bosque con grafos auxiliares en caché."""

    def __init__(self, forest: WorkingForest, index: Optional[ForestIndex] = None):
        self.forest = forest
        self.index = index or build_index(forest)
        self._graphs: Dict[int, AuxGraph] = {}
        self._covers: Dict[int, Optional[VertexCoverResult]] = {}
        self._quads: Dict[int, List[SpecialQuadruple]] = {}

    def edge(self, v: int) -> int:
        return self.forest.parent_edge(v)

    def parent(self, v: int) -> Optional[int]:
        return self.index.parent(v)

    def children(self, v: int) -> List[int]:
        return self.index.children(v)

    def is_leaf(self, v: int) -> bool:
        return self.index.is_leaf(v)

    def is_important(self, v: int) -> bool:
        return self.index.is_important(v)

    def depth(self, v: int) -> int:
        return self.index.depth[v]

    def G(self, u: int) -> AuxGraph:
        if u not in self._graphs:
            self._graphs[u] = build_Gu(self.forest, u, self.index)
        return self._graphs[u]

    def vc(self, u: int) -> Optional[VertexCoverResult]:
        """Cobertura mínima de G_u, o None si G_u tiene grado mayor que 2."""
        if u not in self._covers:
            try:
                self._covers[u] = min_vc_deg2(self.G(u))
            except DegreeTooHighError:
                self._covers[u] = None
        return self._covers[u]

    def shape_of(self, u: int, x: int) -> Optional[ComponentShape]:
        result = self.vc(u)
        if result is None:
            return None
        return next((s for s in result.shapes if x in s.sequence), None)

    def quadruples(self, p: int) -> List[SpecialQuadruple]:
        if p not in self._quads:
            self._quads[p] = detect_special_quadruples(self.forest, p, self.index)
        return self._quads[p]

    def partners(self, x: int, inside: int, outside: Optional[int] = None) -> List[int]:
        """Solicitudes de x hacia T_inside, excluyendo T_outside."""
        idx = self.index
        return sorted(y for y in self.forest.req_adj[x]
                      if idx.in_subtree(y, inside) and (outside is None or not idx.in_subtree(y, outside)))

    def cross(self, x: int, w: int) -> List[int]:
        """Solicitudes cruzadas de x en T_w hacia T_{π(w)} - T_w."""
        p = self.parent(w)
        return [] if p is None else self.partners(x, p, w)


# =============================================================================
# CONSTRUCTOR DE LADOS
# =============================================================================

class SideBuilder:
    """Acumula las ediciones de un lado expresadas sobre vértices de la vista."""

    def __init__(self, view: ForestView):
        self.view = view
        self.edits: List[SideEdit] = []
        self._cut: Set[int] = set()
        self._kept: Set[int] = set()
        self._favored: Dict[int, Set[int]] = defaultdict(set)
        self.valid = True

    def cut(self, v: int) -> 'SideBuilder':
        edge = self.view.edge(v)
        if edge is None:
            self.valid = False
            return self
        if edge in self._kept:
            self.valid = False
        if edge not in self._cut:
            self._cut.add(edge)
            self.edits.append(SideEdit(AccionLado.CUT, edge))
        return self

    def cut_all(self, vertices: Iterable[int]) -> 'SideBuilder':
        for v in sorted(vertices):
            self.cut(v)
        return self

    def keep(self, v: int) -> 'SideBuilder':
        edge = self.view.edge(v)
        if edge is None:
            return self
        if edge in self._cut:
            self.valid = False
        if edge not in self._kept:
            self._kept.add(edge)
            self.edits.append(SideEdit(AccionLado.KEEP, edge))
        return self

    def favor(self, v: int, chain: Sequence[int]) -> 'SideBuilder':
        edge = self.view.edge(v)
        chain_edges = tuple(self.view.edge(c) for c in chain if self.view.edge(c) is not None)
        if edge is not None:
            self.edits.append(SideEdit(AccionLado.FAVOR, edge, chain_edges))
            par = self.view.parent(v)
            if par is not None:
                self._favored[par].add(v)
        return self

    def cut_top(self, t: int) -> 'SideBuilder':
        """Corta t y, si t es importante, una cobertura mínima de G_t."""
        self.cut(t)
        if self.view.is_important(t) and self.view.vc(t) is not None:
            wanted = self._favored.get(t, set())
            cover = None
            if wanted:
                try:
                    cover = cover_containing(self.view.G(t), wanted)
                except DegreeTooHighError:
                    cover = None
            self.cut_all(cover if cover is not None else self.view.vc(t).cover)
        return self

    def kill(self, targets: Iterable[int], merged: Iterable[int]) -> 'SideBuilder':
        """
        Separa cada objetivo de la región fusionada con el ancla conservada.

        Un objetivo cuyo padre está en la región se corta arriba; las hojas de un
        vértice importante colgado de la región se agrupan: si caben juntas en una
        cobertura mínima se favorecen y se cortan, si no se corta su padre y una
        cobertura que contenga a la menor. Los demás objetivos no se fuerzan.
        """
        view = self.view
        region = set(merged)
        detached: List[int] = []
        groups: Dict[int, List[int]] = defaultdict(list)
        for t in sorted(set(targets), key=lambda x: (view.depth(x), x)):
            if t in region:
                self.valid = False
                return self
            if any(view.index.in_subtree(t, d) for d in detached):
                continue
            par = view.parent(t)
            if par in region:
                self.cut_top(t)
                detached.append(t)
            elif par is not None and view.is_important(par) and view.parent(par) in region:
                groups[par].append(t)
        for par in sorted(groups):
            if any(view.index.in_subtree(par, d) for d in detached):
                continue
            members = sorted(groups[par])
            graph = view.G(par)
            try:
                together = jointly_coverable(graph, members)
            except DegreeTooHighError:
                continue
            if together:
                for x in members:
                    self.favor(x, (par,))
                    self.cut(x)
            else:
                self.cut(par)
                try:
                    cover = cover_containing(graph, [members[0]])
                except DegreeTooHighError:
                    cover = None
                self.cut_all(cover if cover is not None else [members[0]])
        return self

    def build(self) -> Optional[Side]:
        return tuple(self.edits) if self.valid else None


def make_plan(rule: str, builders: Iterable[SideBuilder]) -> Optional[BranchPlan]:
    """Plan con los lados válidos y su firma declarada; None si ninguno sobrevive."""
    built = [b.build() for b in builders]
    bounds = RULE_SIGNATURES.get(rule)
    if bounds is not None and len(bounds) != len(built):
        bounds = None
    sides, declared = [], []
    for i, side in enumerate(built):
        if side is not None:
            sides.append(side)
            declared.append(bounds[i] if bounds is not None else None)
    if not sides:
        return None
    return BranchPlan(rule, sides, tuple(declared))


# =============================================================================
# SELECCIÓN
# =============================================================================

def important_vertices(view: ForestView) -> List[int]:
    """Vértices importantes ordenados por profundidad decreciente y luego por id."""
    found = [v for v in view.forest.vertices if view.is_important(v)]
    return sorted(found, key=lambda v: (-view.depth(v), v))


def select_important_vertex(forest: WorkingForest, index: Optional[ForestIndex] = None) -> Optional[int]:
    """
    Vértice importante más lejano de la raíz de su componente.

    Returns:
        Optional[int]: El de menor id entre los más profundos; None si no hay
    """
    ordered = important_vertices(ForestView(forest, index))
    return ordered[0] if ordered else None


# =============================================================================
# RAMIFICACIÓN SOBRE G_w
# =============================================================================

def branch_on_aux_graph(view: ForestView, w: int) -> Optional[BranchPlan]:
    """
    Ramifica sobre un vértice de grado >= 3 o un camino impar largo de G_w.

    Returns:
        Optional[BranchPlan]: {cortar v} | {cortar N(v)}, o {cortar C_e} | {cortar vecino de e}
    """
    graph = view.G(w)
    if graph.max_degree() >= 3:
        v = min(graph.nodes, key=lambda x: (-graph.degree(x), x))
        return make_plan('branch_rule_1', [
            SideBuilder(view).cut(v),
            SideBuilder(view).cut_all(graph.neighbors(v)),
        ])
    result = view.vc(w)
    if result is None:
        return None
    for shape in result.shapes:
        if shape.is_path and shape.length >= 5 and shape.length % 2 == 1:
            return make_plan('branch_rule_3', [
                SideBuilder(view).cut_all(min_covers(shape)[0]),
                SideBuilder(view).cut(shape.sequence[1]),
            ])
    return None


# =============================================================================
# CASOS SOBRE UN HIJO IMPORTANTE w DE p
# =============================================================================

def _keep_child(view: ForestView, w: int, u: int) -> SideBuilder:
    """Lado que conserva u favorecido, y con él la arista de w."""
    return SideBuilder(view).favor(u, (w,)).keep(u)


def case_1(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    uncles = [y for y in view.cross(w, w) if view.parent(y) == p and view.is_important(y)]
    if not uncles:
        return None
    other = uncles[0]
    return make_plan('case_1', [SideBuilder(view).cut_top(w), SideBuilder(view).cut_top(other)])


def case_2(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    graph = view.G(w)
    for u in graph.nodes:
        targets = view.cross(u, w)
        if graph.degree(u) == 2 and targets:
            keep = _keep_child(view, w, u).cut_all(graph.neighbors(u)).kill(targets, {u, w, p})
            return make_plan('case_2', [SideBuilder(view).cut(u), keep])
    return None


def case_2_5(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    result = view.vc(w)
    for shape in result.shapes:
        if not (shape.is_path and shape.length == 3):
            continue
        for seq in (shape.sequence, shape.sequence[::-1]):
            u, x, y, _ = seq
            targets = view.cross(u, w)
            if targets:
                keep = _keep_child(view, w, u).cut(x).kill(targets, {u, w, p})
                return make_plan('case_2_5', [SideBuilder(view).cut(u).cut(y), keep])
    return None


def _edge_partner(view: ForestView, w: int, u: int) -> Optional[int]:
    shape = view.shape_of(w, u)
    if shape is None or not shape.is_path or shape.length != 1:
        return None
    a, b = shape.sequence
    return b if a == u else a


def case_1_5(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    for u in view.G(w).nodes:
        targets = view.cross(u, w)
        if not any(view.parent(t) == p and view.is_important(t) for t in targets):
            continue
        v = _edge_partner(view, w, u)
        if v is None:
            continue
        keep = _keep_child(view, w, u).cut(v).kill(targets, {u, w, p})
        return make_plan('case_1_5', [SideBuilder(view).cut(u), keep])
    return None


def case_3(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    for u in view.G(w).nodes:
        targets = view.cross(u, w)
        if len(targets) < 2:
            continue
        v = _edge_partner(view, w, u)
        if v is None:
            continue
        first, second = targets[0], targets[1]
        same_parent = view.parent(first) == view.parent(second) != p
        keep = _keep_child(view, w, u).cut(v).kill(targets, {u, w, p})
        return make_plan('case_3_2' if same_parent else 'case_3_1', [SideBuilder(view).cut(u), keep])
    return None


def _leaf_sibling_targets(view: ForestView, p: int, w: int) -> List[int]:
    return [y for y in view.cross(w, w) if view.parent(y) == p and view.is_leaf(y)]


def case_4(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    if not _leaf_sibling_targets(view, p, w) or view.vc(w).size < 2:
        return None
    keep = SideBuilder(view).keep(w).kill(view.cross(w, w), {w, p})
    return make_plan('case_4', [SideBuilder(view).cut_top(w), keep])


def case_5(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    leaf_targets = _leaf_sibling_targets(view, p, w)
    if not leaf_targets:
        return None
    w_prime = leaf_targets[0]
    own = view.cross(w, w)
    if any(y != w_prime for y in own):
        keep = SideBuilder(view).keep(w).kill(own, {w, p})
        return make_plan('case_5_1', [SideBuilder(view).cut_top(w), keep])
    graph = view.G(w)
    for u in graph.nodes:
        targets = view.cross(u, w)
        if any(t != w_prime for t in targets):
            keep = _keep_child(view, w, u).cut_all(graph.neighbors(u)).kill(targets + own, {u, w, p})
            return make_plan('case_5_2', [SideBuilder(view).cut(u), keep])
    return None


def case_6(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    kids = set(view.children(w))
    for w_prime in _leaf_sibling_targets(view, p, w):
        targets = [y for y in view.partners(w_prime, p) if y != w_prime]
        if any(y != w and y not in kids for y in targets):
            keep = SideBuilder(view).keep(w_prime).kill(targets, {w_prime, p})
            return make_plan('case_6', [SideBuilder(view).cut(w_prime), keep])
    return None


def case_70(view: ForestView, p: int) -> Optional[BranchPlan]:
    """Hoja hija de p fuera de cuádruplas con tres o más solicitudes a hojas hermanas o sobrinos."""
    in_quads = set().union(*(q.members for q in view.quadruples(p))) if view.quadruples(p) else set()
    for w_prime in view.index.leaf_children(p):
        if w_prime in in_quads:
            continue
        targets = [y for y in view.partners(w_prime, p) if y != w_prime]
        local = [y for y in targets if (view.parent(y) == p and view.is_leaf(y))
                 or (view.parent(y) is not None and view.parent(view.parent(y)) == p)]
        if len(local) >= 3:
            keep = SideBuilder(view).keep(w_prime).kill(targets, {w_prime, p})
            return make_plan('case_70', [SideBuilder(view).cut(w_prime), keep])
    return None


def _double_cross_edges(view: ForestView, w: int) -> List[Tuple[int, int]]:
    found = []
    for shape in view.vc(w).shapes:
        if shape.is_path and shape.length == 1:
            a, b = shape.sequence
            if view.cross(a, w) and view.cross(b, w):
                found.append((a, b))
    return found


def _is_leaf_uncle(view: ForestView, p: int, y: int) -> bool:
    return view.parent(y) == p and view.is_leaf(y)


def _exact_double_uncle(view: ForestView, w: int, u: int, v: int, x: int, y: int) -> Optional[Tuple[int, int]]:
    """
    Tíos hoja (A, B) si u, x sólo piden separarse de A (y de su pareja), v, y
    sólo de B, y A, B no tienen otras solicitudes. El resto de hijos de w y
    las solicitudes de w no intervienen.
    """
    p = view.parent(w)
    cu, cv = view.cross(u, w), view.cross(v, w)
    if len(cu) != 1 or len(cv) != 1:
        return None
    a, b = cu[0], cv[0]
    if a == b or not (_is_leaf_uncle(view, p, a) and _is_leaf_uncle(view, p, b)):
        return None
    req = view.forest.req_adj
    if not (req[a] == {u, x} and req[b] == {v, y}):
        return None
    if not (req[u] == {v, a} and req[x] == {y, a} and req[v] == {u, b} and req[y] == {x, b}):
        return None
    return a, b


def case_7(view: ForestView, p: int, w: int) -> Optional[BranchPlan]:
    edges = _double_cross_edges(view, w)
    if len(edges) < 2:
        return None
    (u, v), (x, y) = edges[0], edges[1]

    for a, b in ((u, v), (x, y)):
        ca, cb = view.cross(a, w), view.cross(b, w)
        if ca == cb and len(ca) == 1 and _is_leaf_uncle(view, p, ca[0]):
            uncle = ca[0]
            keep = SideBuilder(view).keep(uncle).cut_top(w)
            return make_plan('case_7_1', [SideBuilder(view).cut(uncle), keep])

    for xx, yy in ((x, y), (y, x)):
        uncles = _exact_double_uncle(view, w, u, v, xx, yy)
        if uncles is not None:
            a, b = uncles
            return make_plan('case_7_2', [
                SideBuilder(view).cut_top(w),
                SideBuilder(view).cut(a).cut(v).cut(yy).keep(b).keep(w),
                SideBuilder(view).cut(b).cut(u).cut(xx).keep(a).keep(w),
            ])

    rule = 'case_7_4'
    for uu, vv in ((u, v), (v, u)):
        for xx, yy in ((x, y), (y, x)):
            cu, cx = view.cross(uu, w), view.cross(xx, w)
            if rule == 'case_7_4' and cu == cx and len(cu) == 1 and _is_leaf_uncle(view, p, cu[0]):
                rule, u, v, x, y = 'case_7_3', uu, vv, xx, yy

    builders = []
    quad = (u, v, x, y)
    for cut_pair in ((u, x), (u, y), (v, x), (v, y)):
        kept = [z for z in quad if z not in cut_pair]
        side = SideBuilder(view).favor(v, (w,)).favor(y, (w,)).cut_all(cut_pair)
        for z in kept:
            side.keep(z)
        if cut_pair != (v, y):
            targets = [t for z in kept for t in view.cross(z, w)]
            side.kill(targets, {w, p, *kept})
        builders.append(side)
    return make_plan(rule, builders)


CASES_PER_CHILD = (case_1, case_2, case_2_5, case_1_5, case_3, case_4, case_5, case_6)


def branch_on_cases(view: ForestView, p: int, w: Optional[int] = None) -> Optional[BranchPlan]:
    """
    Casos 1-7 sobre los hijos importantes de p, empezando por w.

    Returns:
        Optional[BranchPlan]: Plan del primer caso aplicable
    """
    important = [c for c in view.children(p) if view.is_important(c) and view.vc(c) is not None]
    if w is not None and w in important:
        important.remove(w)
        important.insert(0, w)
    for child in important:
        for case in CASES_PER_CHILD:
            plan = case(view, p, child)
            if plan is not None:
                logger.debug(f"{plan.rule} en {child} (padre {p})")
                return plan
    plan = case_70(view, p)
    if plan is not None:
        return plan
    for child in important:
        plan = case_7(view, p, child)
        if plan is not None:
            return plan
    return None


__all__ = [
    'AccionLado',
    'SideEdit',
    'Side',
    'RULE_SIGNATURES',
    'BranchPlan',
    'ForestView',
    'SideBuilder',
    'make_plan',
    'important_vertices',
    'select_important_vertex',
    'branch_on_aux_graph',
    'branch_on_cases',
    'case_70',
]
