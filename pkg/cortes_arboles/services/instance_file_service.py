"""
Formato de archivo de instancias y de cortes.

Líneas: `c ...` comentario, `p tct <n> <modo>` encabezado, `e <u> <v> [<costo>]`
arista, `q <u> <v>` solicitud, `t <i> <u1> <u2> ...` conjunto de terminales y
`k <int>` parámetro. Los ids son base 1 en el archivo y base 0 en memoria.
"""

from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple, Union

from ..core.exceptions import ParseError
from ..models import CutSet, Instance, Modo, build_instance
from ..utils import logger
from .forest import WorkingForest


def _ints(tokens: List[str], line: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(line, f"se esperaban enteros y hay {' '.join(tokens)!r}")


def parse_text(text: str) -> Instance:
    """
    Interpreta el texto de un archivo de instancia.

    Args:
        text: Contenido del archivo

    Returns:
        Instance: Instancia validada

    Raises:
        ParseError: Si una línea es inválida (con su número)
        InstanceError: Si el contenido no describe un árbol válido
    """
    header: Optional[Tuple[int, Modo]] = None
    edges: List[Tuple[int, int]] = []
    costs: List[int] = []
    requests: List[Tuple[int, int]] = []
    sets: Dict[int, Set[int]] = {}
    k: Optional[int] = None

    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        kind, rest = tokens[0], tokens[1:]

        if kind == 'p':
            if header is not None:
                raise ParseError(number, "encabezado repetido")
            if len(rest) != 3 or rest[0] != 'tct':
                raise ParseError(number, "se esperaba 'p tct <n> <modo>'")
            try:
                mode = Modo(rest[2])
            except ValueError:
                raise ParseError(number, f"modo desconocido {rest[2]!r}")
            (n,) = _ints(rest[1:2], number)
            if n < 1:
                raise ParseError(number, "n debe ser positivo")
            header = (n, mode)
            continue

        if header is None:
            raise ParseError(number, "línea antes del encabezado")
        n, mode = header

        if kind == 'e':
            values = _ints(rest, number)
            if len(values) == 3:
                if mode is not Modo.WGMWCT:
                    raise ParseError(number, f"costo de arista no permitido en modo {mode.value}")
                costs.append(values[2])
            elif len(values) == 2:
                if mode is Modo.WGMWCT:
                    costs.append(1)
            else:
                raise ParseError(number, "se esperaba 'e <u> <v> [<costo>]'")
            edges.append((values[0] - 1, values[1] - 1))
        elif kind == 'q':
            if mode is not Modo.MCT:
                raise ParseError(number, f"solicitudes no permitidas en modo {mode.value}")
            values = _ints(rest, number)
            if len(values) != 2:
                raise ParseError(number, "se esperaba 'q <u> <v>'")
            requests.append((values[0] - 1, values[1] - 1))
        elif kind == 't':
            if mode is Modo.MCT:
                raise ParseError(number, "conjuntos de terminales no permitidos en modo mct")
            values = _ints(rest, number)
            if len(values) < 2 or values[0] < 1:
                raise ParseError(number, "se esperaba 't <i> <u1> ...'")
            sets.setdefault(values[0], set()).update(v - 1 for v in values[1:])
        elif kind == 'k':
            values = _ints(rest, number)
            if len(values) != 1:
                raise ParseError(number, "se esperaba 'k <int>'")
            k = values[0]
        else:
            raise ParseError(number, f"tipo de línea desconocido {kind!r}")

    if header is None:
        raise ParseError(0, "falta el encabezado 'p tct'")
    n, mode = header
    if mode is Modo.MCT:
        return build_instance(edges, requests, k=k, n=n, mode=mode)
    terminal_sets = [sorted(sets[i]) for i in sorted(sets)]
    return build_instance(edges, terminal_sets=terminal_sets, k=k, n=n, mode=mode,
                          costs=costs if mode is Modo.WGMWCT else None)


def parse(path: Union[str, Path]) -> Instance:
    return parse_text(Path(path).read_text(encoding='utf-8'))


def format_instance(instance: Instance, comments: Optional[List[str]] = None) -> str:
    """Texto del archivo de una instancia; `parse_text` lo devuelve igual."""
    lines = [f"c {comment}" for comment in comments or []]
    lines.append(f"p tct {instance.n} {instance.mode.value}")
    for eid, (u, v) in enumerate(instance.edges):
        if instance.mode is Modo.WGMWCT:
            lines.append(f"e {u + 1} {v + 1} {instance.edge_cost(eid)}")
        else:
            lines.append(f"e {u + 1} {v + 1}")
    if instance.mode is Modo.MCT:
        for u, v in sorted(instance.requests):
            lines.append(f"q {u + 1} {v + 1}")
    else:
        for i, terminal_set in enumerate(instance.terminal_sets or (), start=1):
            lines.append(f"t {i} " + " ".join(str(x + 1) for x in sorted(terminal_set)))
    if instance.k is not None:
        lines.append(f"k {instance.k}")
    return "\n".join(lines) + "\n"


def write_instance(instance: Instance, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(format_instance(instance), encoding='utf-8')
    logger.info(f"Instancia escrita en {path}")
    return path


# =============================================================================
# CORTES
# =============================================================================

def parse_cut_text(text: str, instance: Instance) -> CutSet:
    """
    Lee un corte como líneas `e <u> <v>` (o `<u> <v>`) con ids base 1.

    Raises:
        ParseError: Si una línea no nombra una arista del árbol
    """
    index = instance.edge_index()
    chosen = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == 'c':
            continue
        if tokens[0] == 'e':
            tokens = tokens[1:]
        values = _ints(tokens, number)
        if len(values) != 2:
            raise ParseError(number, "se esperaba 'e <u> <v>'")
        u, v = values[0] - 1, values[1] - 1
        eid = index.get((min(u, v), max(u, v)))
        if eid is None:
            raise ParseError(number, f"({values[0]}, {values[1]}) no es una arista del árbol")
        chosen.append(eid)
    return CutSet.of(chosen)


def format_cut(instance: Instance, cutset: CutSet) -> str:
    return "".join(f"e {u} {v}\n" for u, v in cutset.as_one_based(instance))


# =============================================================================
# INSTANCIA REDUCIDA
# =============================================================================

def reduced_instance(forest: WorkingForest) -> Tuple[Instance, List[str]]:
    """
    Instancia equivalente al bosque reducido, sin las aristas ya decididas.

    Las componentes se unen por su raíz a la primera raíz con aristas
    sintéticas que ninguna solicitud cruza, de modo que el resultado sigue
    siendo un árbol con el mismo óptimo.

    Returns:
        Tuple[Instance, List[str]]: Instancia y comentarios con el origen de cada vértice
    """
    vertices = forest.vertices
    label = {v: i for i, v in enumerate(vertices)}
    edges = [(label[a], label[b]) for _, (a, b) in sorted(forest.edge_ends.items())]
    roots = forest.roots
    edges += [(label[roots[0]], label[r]) for r in roots[1:]]
    requests = [(label[a], label[b]) for a, b in forest.requests]
    budget = forest.budget
    instance = build_instance(edges, requests, k=budget, n=len(vertices), mode=Modo.MCT)
    comments = [f"cortes forzados: {len(forest.committed_cut)}"]
    comments += [f"vértice {label[v] + 1} = " + " ".join(str(x + 1) for x in sorted(forest.members[v]))
                 for v in vertices]
    return instance, comments


__all__ = [
    'parse_text',
    'parse',
    'format_instance',
    'write_instance',
    'parse_cut_text',
    'format_cut',
    'reduced_instance',
]
