#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SOLUCIONADOR DE CORTES EN ÁRBOLES - CLI
Subcomandos solve, reduce, gen, verify y bench.

El reporte JSON (--json) es la única salida para máquinas y va a stdout; los
mensajes para personas y los logs van a stderr.

Códigos de salida: 0 sí/óptimo/válido, 1 no/inválido, 2 error de uso o de entrada.
"""

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from .config import settings
from .core.exceptions import CortesArbolesError, create_error_response, format_error_details
from .factories import SolverFactory
from .models import CutSet, EstadoResultado, GenSpec, Instance, ModoGeneracion, ResultReport, verify_cut
from .services.forest import root_forest
from .services.instance_file_service import (
    format_instance,
    parse_cut_text,
    parse_text,
    reduced_instance,
    write_instance,
)
from .services.reduction_service import TipoResultado, check_reduced, reduce_to_fixpoint
from .utils import FormatUtils, TimeUtils, handle_exceptions, logger, set_log_level


EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


class _Parser(argparse.ArgumentParser):
    """Parser que señala errores de uso con una excepción en lugar de salir."""

    def error(self, message):
        raise CortesArbolesError(message, error_code="USAGE_ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cortes-arboles",
        description="Multicorte en árboles (FPT) y corte multivía generalizado ponderado (DP)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos de uso:
  cortes-arboles solve --input inst.tct --min --json
  cortes-arboles solve --input inst.tct --k 3
  cortes-arboles gen --gadget special-quadruple --output quad.tct
  cortes-arboles verify --input inst.tct --cut corte.txt
  cortes-arboles bench --sizes 6 8 10 --seeds 3
        """
    )
    parser.add_argument('--verbose', action='store_true', help='Logs de depuración en stderr')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    solve = sub.add_parser('solve', help='Resolver una instancia')
    solve.add_argument('--input', help="Archivo de instancia ('-' o ausente: stdin)")
    group = solve.add_mutually_exclusive_group()
    group.add_argument('--k', type=int, help='Versión de decisión con presupuesto k')
    group.add_argument('--min', action='store_true', help='Versión de optimización')
    solve.add_argument('--mode', choices=['auto', 'fpt', 'dp', 'oracle'], default='auto',
                       help='Solucionador (auto: según el modo de la instancia)')
    solve.add_argument('--threads', type=int, default=None, help='Hilos en la raíz de búsqueda')
    solve.add_argument('--json', action='store_true', help='Reporte JSON en stdout')

    reduce = sub.add_parser('reduce', help='Imprimir la instancia reducida')
    reduce.add_argument('--input')
    reduce.add_argument('--k', type=int)
    reduce.add_argument('--json', action='store_true')

    gen = sub.add_parser('gen', help='Generar una instancia')
    gen.add_argument('--mode', choices=[m.value for m in ModoGeneracion], default='random-tree')
    gen.add_argument('--gadget', help='Nombre del gadget (implica --mode gadget)')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--n', type=int, default=8, help='Número de aristas')
    gen.add_argument('--requests', type=int, default=4)
    gen.add_argument('--q', type=int, default=0, help='Conjuntos de terminales (gmwct/wgmwct)')
    gen.add_argument('--weights', type=int, nargs=2, metavar=('MIN', 'MAX'), default=(1, 1))
    gen.add_argument('--k', type=int)
    gen.add_argument('--output', help='Archivo de salida (por defecto stdout)')
    gen.add_argument('--list', action='store_true', help='Listar gadgets y salir')

    verify = sub.add_parser('verify', help='Verificar un corte')
    verify.add_argument('--input')
    verify.add_argument('--cut', required=True, help='Archivo con líneas e <u> <v>')
    verify.add_argument('--json', action='store_true')

    bench = sub.add_parser('bench', help='Barrido de benchmark en CSV')
    bench.add_argument('--sizes', type=int, nargs='+')
    bench.add_argument('--seeds', type=int)
    bench.add_argument('--seed', type=int, default=0, help='Primera semilla')
    bench.add_argument('--threads', type=int, default=None)
    bench.add_argument('--dp', action='store_true', help='Medir el programa dinámico (q=3)')
    bench.add_argument('--output', help='Archivo CSV (por defecto stdout)')
    return parser


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise CortesArbolesError(f"No se puede leer {path}: {e.strerror or e}", error_code="FILE_ERROR",
                                 details={'path': str(path)}) from e


def _load(path: Optional[str]) -> Instance:
    if path is None or path == '-':
        return parse_text(sys.stdin.read())
    return parse_text(_read_text(path))


def _emit(report: ResultReport, as_json: bool) -> None:
    if as_json:
        print(FormatUtils.safe_json_serialize(report.to_dict()))
    summary = f"{report.status.value}"
    if report.size is not None:
        summary += f" tamaño={report.size}"
    if report.cost is not None:
        summary += f" costo={report.cost}"
    summary += f" ({TimeUtils.format_duration(report.wall_time)})"
    print(summary, file=sys.stderr)
    for u, v in report.cut:
        print(f"e {u} {v}", file=sys.stderr)


# =============================================================================
# SUBCOMANDOS
# =============================================================================

@handle_exceptions(CortesArbolesError)
def cmd_solve(args) -> int:
    instance = _load(args.input)
    k = args.k if args.k is not None else (None if args.min else instance.k)
    if args.mode == 'auto':
        solver = SolverFactory.create_for_mode(instance.mode, args.threads)
    elif args.mode == 'fpt':
        solver = SolverFactory.create_fpt_solver(threads=args.threads)
    elif args.mode == 'dp':
        solver = SolverFactory.create_dp_solver()
    else:
        solver = SolverFactory.create_oracle()
    logger.info(f"Resolviendo {instance.mode.value} con {type(solver).__name__} (k={k})")
    report = solver.solve(instance, k)
    _emit(report, args.json)
    return EXIT_NO if report.status is EstadoResultado.NO else EXIT_OK


@handle_exceptions(CortesArbolesError)
def cmd_reduce(args) -> int:
    start = time.perf_counter()
    instance = _load(args.input)
    budget = args.k if args.k is not None else instance.k
    forest = root_forest(instance, settings.solver.PREFERRED_ROOT, budget)
    outcome = reduce_to_fixpoint(forest)
    if outcome.kind is TipoResultado.INFEASIBLE:
        _emit(ResultReport(EstadoResultado.NO, instance.mode, stats={'fired': outcome.fired},
                           wall_time=time.perf_counter() - start), args.json)
        return EXIT_NO
    violations = check_reduced(forest)
    if violations:
        logger.warning(f"Propiedades de reducción no satisfechas: {violations}")
    reduced, comments = reduced_instance(forest)
    if not args.json:
        sys.stdout.write(format_instance(reduced, comments))
    report = ResultReport(
        status=EstadoResultado.REDUCED,
        mode=instance.mode,
        size=len(forest.committed_cut),
        cut=CutSet.of(forest.committed_cut).as_one_based(instance),
        stats={'fired': outcome.fired, 'contractions': outcome.contractions,
               'vertices': reduced.n, 'requests': len(reduced.requests), 'violations': violations},
        wall_time=time.perf_counter() - start,
    )
    if args.json:
        print(FormatUtils.safe_json_serialize(report.to_dict()))
    return EXIT_OK


@handle_exceptions(CortesArbolesError)
def cmd_gen(args) -> int:
    generator = SolverFactory.create_generator()
    if args.list:
        print("\n".join(generator.list_gadgets()))
        return EXIT_OK
    mode = ModoGeneracion.GADGET if args.gadget else ModoGeneracion(args.mode)
    spec = GenSpec(seed=args.seed, n=args.n, requests=args.requests, mode=mode,
                   gadget=args.gadget, weight_range=tuple(args.weights), q=args.q)
    instance = generator.generate(spec)
    if args.k is not None:
        instance = instance.with_k(args.k)
    if args.output:
        write_instance(instance, args.output)
    else:
        sys.stdout.write(format_instance(instance))
    return EXIT_OK


@handle_exceptions(CortesArbolesError)
def cmd_verify(args) -> int:
    start = time.perf_counter()
    instance = _load(args.input)
    cut = parse_cut_text(_read_text(args.cut), instance)
    valid = verify_cut(instance, cut)
    report = ResultReport(
        status=EstadoResultado.VALID if valid else EstadoResultado.INVALID,
        mode=instance.mode,
        size=cut.size,
        cost=cut.cost(instance),
        cut=cut.as_one_based(instance),
        wall_time=time.perf_counter() - start,
    )
    _emit(report, args.json)
    return EXIT_OK if valid else EXIT_NO


@handle_exceptions(CortesArbolesError)
def cmd_bench(args) -> int:
    service = SolverFactory.create_bench_service(threads=args.threads)
    if args.dp:
        frame = service.run_dp(args.sizes or [10_000, 20_000, 40_000])
    else:
        frame = service.run_fpt(args.sizes, args.seeds, args.seed)
    text = service.to_csv(frame, args.output)
    if not args.output:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    'solve': cmd_solve,
    'reduce': cmd_reduce,
    'gen': cmd_gen,
    'verify': cmd_verify,
    'bench': cmd_bench,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Ejecuta la CLI.

    Args:
        argv: Argumentos sin el nombre del programa

    Returns:
        int: Código de salida
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CortesArbolesError as e:
        print(f"ERROR: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.verbose:
        set_log_level('DEBUG')
    try:
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        print("Ejecución interrumpida por el usuario", file=sys.stderr)
        return EXIT_INTERRUPTED
    except CortesArbolesError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        logger.debug(f"Detalles: {format_error_details(e)}")
        if getattr(args, 'json', False):
            print(FormatUtils.safe_json_serialize(create_error_response(e)))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
