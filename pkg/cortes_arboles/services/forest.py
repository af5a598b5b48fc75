"""
Bosque de trabajo enraizado con ediciones de corte y contracción.

Cada vértice vivo representa un supervértice (conjunto de vértices originales
fusionados por contracción); cada arista viva guarda el id de la única arista
original de la que desciende.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from ..core.exceptions import BudgetExhausted, CaseAnalysisViolation, InfeasibleBranch
from ..models import Edit, EditLog, Instance, Par, TipoEdicion, normalize_pair


class WorkingForest:
    """Bosque mutable de un solo dueño; `copy()` produce una copia independiente."""

    def __init__(self, instance: Instance, budget: Optional[int] = None):
        self.instance = instance
        self.adj: Dict[int, Dict[int, int]] = {v: {} for v in range(instance.n)}
        self.edge_ends: Dict[int, Tuple[int, int]] = {}
        for eid, (u, v) in enumerate(instance.edges):
            self.adj[u][v] = eid
            self.adj[v][u] = eid
            self.edge_ends[eid] = (u, v)
        self.parent: Dict[int, Optional[int]] = {v: None for v in range(instance.n)}
        self.members: Dict[int, Set[int]] = {v: {v} for v in range(instance.n)}
        self.req_adj: Dict[int, Set[int]] = {v: set() for v in range(instance.n)}
        for u, v in instance.requests:
            self.req_adj[u].add(v)
            self.req_adj[v].add(u)
        self.budget = budget
        self.committed_cut: List[int] = []
        self.log = EditLog()
        self.node_id = 0

    # ------------------------------------------------------------------
    # copia y consultas
    # ------------------------------------------------------------------

    def copy(self) -> 'WorkingForest':
        clone = WorkingForest.__new__(WorkingForest)
        clone.instance = self.instance
        clone.adj = {v: dict(nb) for v, nb in self.adj.items()}
        clone.edge_ends = dict(self.edge_ends)
        clone.parent = dict(self.parent)
        clone.members = {v: set(m) for v, m in self.members.items()}
        clone.req_adj = {v: set(r) for v, r in self.req_adj.items()}
        clone.budget = self.budget
        clone.committed_cut = list(self.committed_cut)
        clone.log = self.log.copy()
        clone.node_id = self.node_id
        return clone

    @property
    def vertices(self) -> List[int]:
        return sorted(self.adj)

    @property
    def roots(self) -> List[int]:
        return sorted(v for v, p in self.parent.items() if p is None)

    @property
    def requests(self) -> List[Par]:
        return sorted({normalize_pair(u, v) for u, nb in self.req_adj.items() for v in nb})

    @property
    def request_count(self) -> int:
        return sum(len(nb) for nb in self.req_adj.values()) // 2

    def has_request(self, u: int, v: int) -> bool:
        return v in self.req_adj.get(u, ())

    def is_live(self, edge_id: int) -> bool:
        return edge_id in self.edge_ends

    def is_cut(self, edge_id: int) -> bool:
        return edge_id in self.committed_cut

    def children(self, u: int) -> List[int]:
        return sorted(x for x in self.adj[u] if self.parent.get(x) == u)

    def parent_edge(self, u: int) -> Optional[int]:
        p = self.parent[u]
        return None if p is None else self.adj[u][p]

    def child_of_edge(self, edge_id: int) -> int:
        a, b = self.edge_ends[edge_id]
        return a if self.parent[a] == b else b

    def root_of(self, v: int) -> int:
        while self.parent[v] is not None:
            v = self.parent[v]
        return v

    def component(self, start: int) -> List[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    # ------------------------------------------------------------------
    # enraizado
    # ------------------------------------------------------------------

    def _orient(self, root: int) -> None:
        self.parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y != self.parent[x]:
                    self.parent[y] = x
                    queue.append(y)

    def _settle_root(self, vertex: int, preferred: Optional[int] = None) -> None:
        """Garantiza que la raíz de la componente sea interna cuando exista un vértice interno."""
        current = self.root_of(vertex)
        if preferred is None and len(self.adj[current]) >= 2:
            return
        comp = self.component(current)
        if preferred is not None and preferred in self.adj and len(self.adj[preferred]) >= 2 \
                and preferred in comp:
            target = preferred
        else:
            internal = [x for x in comp if len(self.adj[x]) >= 2]
            target = internal[0] if internal else comp[0]
        if preferred is None and target == current:
            return
        self._orient(target)

    # ------------------------------------------------------------------
    # ediciones
    # ------------------------------------------------------------------

    def _record(self, kind: TipoEdicion, edge: Optional[int] = None, vertex: Optional[int] = None,
                chain: Tuple[int, ...] = ()) -> None:
        self.log.append(Edit(kind, edge, vertex, chain, self.node_id))

    def cut_edge(self, edge_id: int) -> None:
        """
        Corta una arista viva y purga las solicitudes separadas.

        Raises:
            BudgetExhausted: Si el presupuesto no alcanza
        """
        if edge_id not in self.edge_ends:
            raise CaseAnalysisViolation(f"La arista {edge_id} no está viva", error_code="DEAD_EDGE")
        if self.budget is not None and self.budget < 1:
            raise BudgetExhausted("Presupuesto agotado", error_code="BUDGET_EXHAUSTED")

        child = self.child_of_edge(edge_id)
        par = self.parent[child]
        del self.edge_ends[edge_id]
        del self.adj[child][par]
        del self.adj[par][child]
        self.parent[child] = None
        self.committed_cut.append(edge_id)
        if self.budget is not None:
            self.budget -= 1
        self._record(TipoEdicion.CUT, edge=edge_id)

        detached = set(self.component(child))
        for x in detached:
            for y in [y for y in self.req_adj[x] if y not in detached]:
                self.req_adj[x].discard(y)
                self.req_adj[y].discard(x)

        self._settle_root(child)
        self._settle_root(par)

    def contract_edge(self, edge_id: int) -> int:
        """
        Contrae una arista viva fusionando el hijo en el padre.

        Returns:
            int: Vértice superviviente

        Raises:
            InfeasibleBranch: Si una solicitud une ambos extremos
        """
        if edge_id not in self.edge_ends:
            raise CaseAnalysisViolation(f"La arista {edge_id} no está viva", error_code="DEAD_EDGE")
        child = self.child_of_edge(edge_id)
        par = self.parent[child]
        if par in self.req_adj[child]:
            raise InfeasibleBranch("Solicitud unitaria sobre una arista conservada",
                                   error_code="UNIT_REQUEST_KEPT", details={'edge': edge_id})

        del self.edge_ends[edge_id]
        del self.adj[child][par]
        del self.adj[par][child]
        for y, eid in self.adj[child].items():
            self.adj[par][y] = eid
            self.adj[y][par] = eid
            del self.adj[y][child]
            self.parent[y] = par
            self.edge_ends[eid] = (par, y)
        del self.adj[child]
        del self.parent[child]
        self.members[par] |= self.members.pop(child)
        for x in self.req_adj.pop(child):
            self.req_adj[x].discard(child)
            self.req_adj[x].add(par)
            self.req_adj[par].add(x)
        self._record(TipoEdicion.CONTRACT, edge=edge_id, vertex=par)
        self._settle_root(par)
        return par

    def record_favor(self, vertex: int, chain: Tuple[int, ...]) -> None:
        self._record(TipoEdicion.FAVOR, vertex=vertex, chain=chain)

    def recenter(self) -> bool:
        """
        Reenraiza cada componente en su centro de menor id.

        Returns:
            bool: True si alguna componente cambió de raíz
        """
        changed = False
        for root in self.roots:
            comp = self.component(root)
            if len(comp) < 3:
                continue
            graph = nx.Graph((x, y) for x in comp for y in self.adj[x])
            target = min(nx.center(graph))
            if target != root:
                self._orient(target)
                self._record(TipoEdicion.RECENTER, vertex=target)
                changed = True
        return changed

    def snapshot(self) -> Tuple:
        """Estado comparable (hasta etiquetas) usado por las pruebas de reproducción."""
        return (
            frozenset((eid, frozenset(ends)) for eid, ends in self.edge_ends.items()),
            frozenset(frozenset(m) for m in self.members.values()),
            frozenset(frozenset((min(self.members[u]), min(self.members[v])))
                      for u, v in self.requests),
            tuple(sorted(self.committed_cut)),
            self.budget,
        )


def root_forest(instance: Instance, preferred_root: Optional[int] = None,
                budget: Optional[int] = None) -> WorkingForest:
    """
    Construye el bosque de trabajo enraizado en un vértice interno.

    Args:
        instance: Instancia validada
        preferred_root: Raíz preferida si es interna
        budget: Presupuesto inicial (k) en modo decisión

    Returns:
        WorkingForest: Bosque enraizado
    """
    forest = WorkingForest(instance, budget if budget is not None else instance.k)
    forest._orient(0)
    forest._settle_root(0, preferred=preferred_root if preferred_root is not None else -1)
    return forest


def cut_edge(forest: WorkingForest, live_edge: int) -> None:
    forest.cut_edge(live_edge)


def contract_edge(forest: WorkingForest, live_edge: int) -> int:
    return forest.contract_edge(live_edge)


def replay(instance: Instance, log: EditLog, budget: Optional[int] = None,
           preferred_root: Optional[int] = None) -> WorkingForest:
    """Reaplica una bitácora sobre la instancia original."""
    forest = root_forest(instance, preferred_root, budget)
    for edit in log:
        if edit.kind is TipoEdicion.CUT:
            forest.cut_edge(edit.edge)
        elif edit.kind is TipoEdicion.CONTRACT:
            forest.contract_edge(edit.edge)
        elif edit.kind is TipoEdicion.RECENTER:
            forest._orient(edit.vertex)
            forest._record(TipoEdicion.RECENTER, vertex=edit.vertex)
        else:
            forest.record_favor(edit.vertex, edit.chain)
    return forest


# =============================================================================
# ÍNDICE DE CONSULTAS ESTRUCTURALES
# =============================================================================

@dataclass
class ForestIndex:
    """Profundidades e intervalos de Euler de una instantánea del bosque."""

    forest: WorkingForest
    depth: Dict[int, int]
    tin: Dict[int, int]
    tout: Dict[int, int]
    kids: Dict[int, List[int]]

    def in_subtree(self, x: int, u: int) -> bool:
        return self.tin[u] <= self.tin[x] <= self.tout[u]

    def children(self, u: int) -> List[int]:
        return self.kids[u]

    def parent(self, u: int) -> Optional[int]:
        return self.forest.parent[u]

    def is_leaf(self, u: int) -> bool:
        return not self.kids[u]

    def is_important(self, u: int) -> bool:
        kids = self.kids[u]
        return bool(kids) and all(not self.kids[c] for c in kids)

    def leaf_children(self, u: int) -> List[int]:
        return [c for c in self.kids[u] if not self.kids[c]]

    def height(self, u: int) -> int:
        best = 0
        stack = [(u, 0)]
        while stack:
            x, h = stack.pop()
            best = max(best, h)
            stack.extend((c, h + 1) for c in self.kids[x])
        return best

    def path_vertices(self, a: int, b: int) -> List[int]:
        """Vértices cuya arista al padre está en el camino a-b."""
        up_a, up_b = [], []
        while self.depth[a] > self.depth[b]:
            up_a.append(a)
            a = self.forest.parent[a]
        while self.depth[b] > self.depth[a]:
            up_b.append(b)
            b = self.forest.parent[b]
        while a != b:
            up_a.append(a)
            up_b.append(b)
            a = self.forest.parent[a]
            b = self.forest.parent[b]
        return up_a + up_b[::-1]

    def lca(self, a: int, b: int) -> int:
        while self.depth[a] > self.depth[b]:
            a = self.forest.parent[a]
        while self.depth[b] > self.depth[a]:
            b = self.forest.parent[b]
        while a != b:
            a = self.forest.parent[a]
            b = self.forest.parent[b]
        return a


def build_index(forest: WorkingForest) -> ForestIndex:
    """Recorre cada componente desde su raíz y calcula el índice."""
    depth: Dict[int, int] = {}
    tin: Dict[int, int] = {}
    tout: Dict[int, int] = {}
    kids: Dict[int, List[int]] = {v: [] for v in forest.adj}
    for v, p in forest.parent.items():
        if p is not None:
            kids[p].append(v)
    for v in kids:
        kids[v].sort()

    clock = 0
    for root in forest.roots:
        depth[root] = 0
        stack = [(root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                tout[x] = clock - 1
                continue
            tin[x] = clock
            clock += 1
            stack.append((x, True))
            for c in reversed(kids[x]):
                depth[c] = depth[x] + 1
                stack.append((c, False))
    return ForestIndex(forest, depth, tin, tout, kids)


__all__ = [
    'WorkingForest',
    'ForestIndex',
    'root_forest',
    'cut_edge',
    'contract_edge',
    'replay',
    'build_index',
]
