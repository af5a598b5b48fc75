"""
Servicios del Solucionador de Cortes en Árboles
===============================================

Servicios disponibles:
- FPTMulticutSolver: búsqueda ramificada con reducción para multicorte en árboles
- MultiwayDPSolver: programa dinámico de patrones de conexión para WGMWCT
- BruteForceSolver: oráculo exhaustivo para instancias pequeñas
- InstanceGeneratorService: generador determinista de instancias y gadgets
- BenchService: barridos de benchmark exportables a CSV

Los solucionadores implementan CutSolverInterface y el generador
InstanceGeneratorInterface, ambos en core.interfaces.
"""

from .search_service import FPTMulticutSolver, leaf_bound, solve_decision, solve_min
from .multiway_service import MultiwayDPSolver, solve_gmwct_via_mct, solve_wgmwct
from .oracle_service import BruteForceSolver, brute_force_min_cut, brute_force_vc
from .generator_service import GADGETS, InstanceGeneratorService, generate
from .instance_file_service import format_instance, parse, parse_text, write_instance
from .bench_service import BenchService


__all__ = [
    'FPTMulticutSolver',
    'leaf_bound',
    'solve_decision',
    'solve_min',
    'MultiwayDPSolver',
    'solve_gmwct_via_mct',
    'solve_wgmwct',
    'BruteForceSolver',
    'brute_force_min_cut',
    'brute_force_vc',
    'GADGETS',
    'InstanceGeneratorService',
    'generate',
    'format_instance',
    'parse',
    'parse_text',
    'write_instance',
    'BenchService',
]
