"""
Solucionador de Cortes en Árboles
=================================

Multicorte en árboles con una búsqueda ramificada de parámetro fijo, corte
multivía generalizado ponderado con un programa dinámico de patrones de
conexión, y un oráculo de fuerza bruta para validar ambos.

Ejemplo de uso básico:
    >>> from cortes_arboles import build_instance, solve_min
    >>> instance = build_instance([(0, 1), (0, 2), (0, 3)], [(1, 2), (1, 3), (2, 3)])
    >>> k, cut = solve_min(instance)

Ejemplo con la fábrica:
    >>> from cortes_arboles import SolverFactory
    >>> solver = SolverFactory.create_for_mode(instance.mode)
    >>> report = solver.solve(instance)
"""

__version__ = "1.0.0"
__author__ = "Solucionador de Cortes en Árboles"
__description__ = "Multicorte FPT y corte multivía generalizado en árboles"

# =============================================================================
# IMPORTACIONES PRINCIPALES
# =============================================================================

from .config import settings

from .core.exceptions import (
    CortesArbolesError,
    InstanceError,
    ParseError,
    CaseAnalysisViolation,
    DynamicProgrammingError,
    TooLargeError,
)

from .core.interfaces import CutSolverInterface, InstanceGeneratorInterface

from .models import (
    Modo,
    EstadoResultado,
    ModoGeneracion,
    Instance,
    CutSet,
    EditLog,
    SearchStats,
    ResultReport,
    GenSpec,
    build_instance,
    verify_cut,
)

from .services import (
    FPTMulticutSolver,
    MultiwayDPSolver,
    BruteForceSolver,
    InstanceGeneratorService,
    BenchService,
    solve_decision,
    solve_min,
    solve_wgmwct,
    brute_force_min_cut,
    generate,
    parse,
    format_instance,
)

from .utils import logger, set_log_level

from .factories import SolverFactory, get_solver, get_generator

# =============================================================================
# FUNCIONES DE CONVENIENCIA
# =============================================================================

def get_version() -> str:
    """Versión del paquete."""
    return __version__


def get_system_info() -> dict:
    """
    Obtiene información del sistema.

    Returns:
        dict: Versión, descripción, validez de la configuración y módulos
    """
    return {
        'version': __version__,
        'description': __description__,
        'author': __author__,
        'configuration_valid': settings.validate_all(),
        'modules_loaded': [
            'config', 'core', 'services', 'models',
            'utils', 'factories', 'main'
        ]
    }


def check_dependencies() -> dict:
    """
    Verifica que todas las dependencias estén disponibles.

    Returns:
        dict: Estado de las dependencias
    """
    dependencies = {
        'numpy': False,
        'networkx': False,
        'pandas': False,
        'colorlog': False,
        'dotenv': False,
        'tqdm': False,
        'psutil': False
    }

    for dep in dependencies:
        try:
            __import__(dep)
            dependencies[dep] = True
        except ImportError:
            dependencies[dep] = False

    return {
        'all_available': all(dependencies.values()),
        'details': dependencies,
        'missing': [dep for dep, available in dependencies.items() if not available]
    }


# =============================================================================
# EXPORTACIONES PRINCIPALES
# =============================================================================

__all__ = [
    # Versión y información
    '__version__',
    'get_version',
    'get_system_info',
    'check_dependencies',

    # Configuración
    'settings',

    # Excepciones
    'CortesArbolesError',
    'InstanceError',
    'ParseError',
    'CaseAnalysisViolation',
    'DynamicProgrammingError',
    'TooLargeError',

    # Interfaces
    'CutSolverInterface',
    'InstanceGeneratorInterface',

    # Modelos
    'Modo',
    'EstadoResultado',
    'ModoGeneracion',
    'Instance',
    'CutSet',
    'EditLog',
    'SearchStats',
    'ResultReport',
    'GenSpec',
    'build_instance',
    'verify_cut',

    # Servicios
    'FPTMulticutSolver',
    'MultiwayDPSolver',
    'BruteForceSolver',
    'InstanceGeneratorService',
    'BenchService',
    'solve_decision',
    'solve_min',
    'solve_wgmwct',
    'brute_force_min_cut',
    'generate',
    'parse',
    'format_instance',

    # Utilidades
    'logger',
    'set_log_level',

    # Fábrica
    'SolverFactory',
    'get_solver',
    'get_generator',
]
