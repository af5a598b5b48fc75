"""
Utilidades compartidas: logger con colores, decoradores y formato de reportes.
"""

import sys
import json
import logging
import functools
import time
from enum import Enum
from typing import Any, Callable, Dict

import colorlog
import numpy as np
import psutil

from ..config import settings
from ..core.exceptions import CortesArbolesError


# =============================================================================
# CONFIGURACIÓN DE LOGGING
# =============================================================================

LOG_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'bold_red',
}


def _file_handler(filename: str, level: int) -> logging.Handler:
    handler = logging.FileHandler(settings.base.LOGS_DIR / filename, encoding='utf-8')
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(settings.logging.LOG_FORMAT, datefmt=settings.logging.DATE_FORMAT))
    return handler


def setup_logger(name: str = "cortes_arboles") -> logging.Logger:
    """
    Logger del paquete. La consola es stderr; stdout pertenece al reporte JSON.

    Llamarlo de nuevo con el mismo nombre devuelve el logger ya configurado.

    Args:
        name: Nombre del logger

    Returns:
        logging.Logger: Logger configurado
    """
    log = logging.getLogger(name)
    if log.handlers:
        return log

    log.setLevel(getattr(logging, settings.logging.LOG_LEVEL, logging.WARNING))
    log.propagate = False

    if settings.logging.CONSOLE_LOGGING:
        console = colorlog.StreamHandler(sys.stderr)
        console.setFormatter(colorlog.ColoredFormatter(
            settings.logging.CONSOLE_FORMAT,
            datefmt=settings.logging.DATE_FORMAT,
            log_colors=LOG_COLORS,
        ))
        log.addHandler(console)

    if settings.logging.FILE_LOGGING:
        settings.base.ensure_directories()
        log.addHandler(_file_handler(settings.logging.MAIN_LOG_FILE, logging.INFO))
        log.addHandler(_file_handler(settings.logging.ERROR_LOG_FILE, logging.ERROR))

    return log


logger = setup_logger()


def set_log_level(level: str) -> None:
    """Cambia el nivel del logger global (usado por --verbose)."""
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))


# =============================================================================
# DECORADORES
# =============================================================================

def log_execution_time(func: Callable) -> Callable:
    """Registra en DEBUG la duración de cada llamada, termine bien o con error."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        status = "falló"
        try:
            result = func(*args, **kwargs)
            status = "terminó"
            return result
        finally:
            logger.debug(f"{func.__qualname__} {status} en {time.perf_counter() - start:.4f} s")

    return wrapper


def handle_exceptions(exception_type: type = CortesArbolesError):
    """
    Convierte errores inesperados en `exception_type` con código UNEXPECTED_ERROR.

    Los errores propios del paquete pasan sin cambios; KeyboardInterrupt no es
    una Exception y tampoco se toca.

    Args:
        exception_type: Subclase de CortesArbolesError usada para envolver

    Returns:
        Callable: Decorador
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except CortesArbolesError:
                raise
            except Exception as e:
                logger.error(f"{func.__name__}: {type(e).__name__}: {e}")
                raise exception_type(str(e), error_code="UNEXPECTED_ERROR",
                                     details={'function': func.__name__, 'type': type(e).__name__}) from e
        return wrapper
    return decorator


# =============================================================================
# FORMATO DE REPORTES
# =============================================================================

def _json_default(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    return str(value)


class FormatUtils:
    """Formato del reporte JSON y de duraciones."""

    @staticmethod
    def safe_json_serialize(obj: Any, indent: int = 2) -> str:
        """
        JSON de `obj` aceptando enums, escalares y arreglos numpy, conjuntos y modelos.

        Raises:
            CortesArbolesError: SERIALIZATION_ERROR si el objeto no es serializable
                (referencias circulares, flotantes no finitos con allow_nan=False)
        """
        try:
            return json.dumps(obj, default=_json_default, ensure_ascii=False, indent=indent)
        except (TypeError, ValueError) as e:
            logger.error(f"No se pudo serializar el reporte: {e}")
            raise CortesArbolesError(f"No se pudo serializar el reporte: {e}", error_code="SERIALIZATION_ERROR",
                                     details={'type': type(obj).__name__}) from e


class TimeUtils:

    @staticmethod
    def format_duration(seconds: float) -> str:
        if seconds < 1:
            return f"{seconds * 1000:.1f} ms"
        if seconds < 60:
            return f"{seconds:.2f} s"
        return f"{int(seconds // 60)} min {seconds % 60:.1f} s"


class SystemUtils:

    @staticmethod
    def get_memory_usage() -> Dict[str, float]:
        """Memoria residente del proceso y disponible en el sistema (psutil)."""
        try:
            return {
                'process_rss_mb': round(psutil.Process().memory_info().rss / 1024 ** 2, 1),
                'available_gb': round(psutil.virtual_memory().available / 1024 ** 3, 2),
            }
        except psutil.Error as e:
            return {'error': str(e)}


__all__ = [
    'setup_logger',
    'set_log_level',
    'logger',
    'log_execution_time',
    'handle_exceptions',
    'FormatUtils',
    'TimeUtils',
    'SystemUtils',
]
