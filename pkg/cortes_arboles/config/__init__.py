"""
Configuración centralizada del solucionador de cortes en árboles.
Todas las opciones se leen del entorno (o de un archivo .env) al importar el módulo.
"""

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Any
from pathlib import Path
from dotenv import load_dotenv

# Cargar variables de entorno desde .env
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'si')


def _env_optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name, '').strip()
    return int(raw) if raw else None


# =============================================================================
# CONFIGURACIÓN BASE
# =============================================================================

@dataclass
class BaseConfig:
    """Configuración base del sistema."""

    # Información del proyecto
    PROJECT_NAME: str = os.getenv('CORTES_PROJECT_NAME', 'Solucionador de Cortes en Árboles')
    VERSION: str = os.getenv('CORTES_VERSION', '1.0.0')
    DEBUG: bool = _env_bool('CORTES_DEBUG', 'false')

    # Paths del sistema
    BASE_DIR: Path = Path(__file__).parent.parent
    LOGS_DIR: Path = Path(os.getenv('CORTES_LOGS_DIR', str(Path(__file__).parent.parent / "logs")))
    REPORTS_DIR: Path = Path(os.getenv('CORTES_REPORTS_DIR', str(Path(__file__).parent.parent / "reports")))

    def ensure_directories(self) -> None:
        """Crea los directorios de logs y reportes si no existen."""
        for directory in [self.LOGS_DIR, self.REPORTS_DIR]:
            directory.mkdir(parents=True, exist_ok=True)


# =============================================================================
# CONFIGURACIÓN DEL SOLUCIONADOR FPT
# =============================================================================

@dataclass
class SolverConfig:
    """Configuración de la búsqueda con ramificación para multicorte en árboles."""

    # Tope de combinaciones de coberturas mínimas al evaluar la contracción por cobertura cruzada
    RULE6_COVER_CAP: int = int(os.getenv('CORTES_RULE6_COVER_CAP', '4096'))

    # Hilos para explorar los lados de la raíz de búsqueda
    MAX_THREADS: int = int(os.getenv('CORTES_MAX_THREADS', '1'))

    # Rama genérica de respaldo si ningún caso aplica
    ALLOW_FALLBACK: bool = _env_bool('CORTES_ALLOW_FALLBACK', 'true')

    # Reenraizar cada componente en su centro tras cada punto fijo de reducción
    RECENTER: bool = _env_bool('CORTES_RECENTER', 'true')

    # Límite superior de k al minimizar
    MAX_K: int = int(os.getenv('CORTES_MAX_K', '64'))

    # Raíz preferida (id interno, base 0) para el primer enraizado
    PREFERRED_ROOT: Optional[int] = _env_optional_int('CORTES_PREFERRED_ROOT')

    def validate(self) -> bool:
        """Valida la configuración del solucionador."""
        return self.RULE6_COVER_CAP > 0 and self.MAX_THREADS >= 1 and self.MAX_K >= 0


# =============================================================================
# CONFIGURACIÓN DE LA PROGRAMACIÓN DINÁMICA
# =============================================================================

@dataclass
class DPConfig:
    """Configuración del programa dinámico de patrones de conexión."""

    # q máximo (ancho de tabla 3^q)
    MAX_TERMINAL_SETS: int = int(os.getenv('CORTES_MAX_TERMINAL_SETS', '20'))

    # Centinela +∞; tres sumandos caben en uint64 sin desbordar
    INFINITY: int = 2 ** 62

    def validate(self) -> bool:
        """Valida la configuración de la programación dinámica."""
        return 1 <= self.MAX_TERMINAL_SETS <= 20


# =============================================================================
# CONFIGURACIÓN DEL ORÁCULO
# =============================================================================

@dataclass
class OracleConfig:
    """Límites de los solucionadores de fuerza bruta."""

    MAX_EDGES: int = int(os.getenv('CORTES_ORACLE_MAX_EDGES', '20'))
    MAX_VC_VERTICES: int = int(os.getenv('CORTES_ORACLE_MAX_VC_VERTICES', '20'))

    def validate(self) -> bool:
        """Valida la configuración del oráculo."""
        return 0 < self.MAX_EDGES <= 24 and 0 < self.MAX_VC_VERTICES <= 24


# =============================================================================
# CONFIGURACIÓN DE BENCHMARKS
# =============================================================================

@dataclass
class BenchConfig:
    """Configuración para los barridos de benchmark."""

    DEFAULT_SIZES: List[int] = field(default_factory=lambda: [6, 8, 10, 12, 14, 16])
    DEFAULT_SEEDS: int = int(os.getenv('CORTES_BENCH_SEEDS', '5'))
    REQUESTS_PER_EDGE: float = float(os.getenv('CORTES_BENCH_REQUESTS_PER_EDGE', '0.75'))
    SHOW_PROGRESS: bool = _env_bool('CORTES_BENCH_PROGRESS', 'true')
    CSV_SEPARATOR: str = ','


# =============================================================================
# CONFIGURACIÓN DE LOGGING
# =============================================================================

@dataclass
class LoggingConfig:
    """Configuración para logging."""

    # Niveles de logging
    LOG_LEVEL: str = os.getenv('CORTES_LOG_LEVEL', 'WARNING').upper()

    # Formatos
    LOG_FORMAT: str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    CONSOLE_FORMAT: str = '%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    DATE_FORMAT: str = '%Y-%m-%d %H:%M:%S'

    # Archivos de log
    FILE_LOGGING: bool = _env_bool('CORTES_FILE_LOGGING', 'false')
    MAIN_LOG_FILE: str = 'cortes_arboles.log'
    ERROR_LOG_FILE: str = 'errores.log'

    # Logging a consola (stderr)
    CONSOLE_LOGGING: bool = _env_bool('CORTES_CONSOLE_LOGGING', 'true')

    def validate(self) -> bool:
        """Valida el nivel de logging."""
        return self.LOG_LEVEL in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


# =============================================================================
# CONFIGURACIÓN PRINCIPAL
# =============================================================================

class Settings:
    """Clase principal de configuración del sistema."""

    def __init__(self):
        self.base = BaseConfig()
        self.solver = SolverConfig()
        self.dp = DPConfig()
        self.oracle = OracleConfig()
        self.bench = BenchConfig()
        self.logging = LoggingConfig()

    def validate_all(self) -> Dict[str, bool]:
        """
        Valida todas las configuraciones.

        Returns:
            Dict[str, bool]: Estado de validación por módulo
        """
        return {
            'base': True,
            'solver': self.solver.validate(),
            'dp': self.dp.validate(),
            'oracle': self.oracle.validate(),
            'bench': True,
            'logging': self.logging.validate(),
        }

    def get_summary(self) -> Dict[str, Any]:
        """
        Obtiene un resumen de la configuración actual.

        Returns:
            Dict[str, Any]: Resumen de configuración
        """
        return {
            'project': {
                'name': self.base.PROJECT_NAME,
                'version': self.base.VERSION,
                'debug': self.base.DEBUG
            },
            'solver': {
                'rule6_cover_cap': self.solver.RULE6_COVER_CAP,
                'max_threads': self.solver.MAX_THREADS,
                'allow_fallback': self.solver.ALLOW_FALLBACK,
                'recenter': self.solver.RECENTER,
                'max_k': self.solver.MAX_K,
            },
            'dp': {'max_terminal_sets': self.dp.MAX_TERMINAL_SETS},
            'paths': {
                'logs_dir': str(self.base.LOGS_DIR),
                'reports_dir': str(self.base.REPORTS_DIR)
            },
            'validation': self.validate_all()
        }


# =============================================================================
# INSTANCIA GLOBAL DE CONFIGURACIÓN
# =============================================================================

settings = Settings()

__all__ = [
    'settings',
    'BaseConfig',
    'SolverConfig',
    'DPConfig',
    'OracleConfig',
    'BenchConfig',
    'LoggingConfig',
    'Settings'
]
