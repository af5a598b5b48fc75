"""
Factory Pattern para los solucionadores y servicios.
Centraliza la creación de instancias y el ruteo por modo de problema.
"""

from typing import Any, Dict, Optional

from ..config import settings
from ..core import CutSolverInterface, InstanceGeneratorInterface, validate_interface_implementation
from ..models import Modo
from ..services.bench_service import BenchService
from ..services.generator_service import InstanceGeneratorService
from ..services.multiway_service import MultiwayDPSolver
from ..services.oracle_service import BruteForceSolver
from ..services.search_service import FPTMulticutSolver
from ..utils import logger


class SolverFactory:
    """
    Factory para crear solucionadores y servicios auxiliares.

    Los solucionadores se crean siempre nuevos (guardan estadísticas de la
    última ejecución); el generador es un singleton sin estado.
    """

    _instances: Dict[str, Any] = {}

    @classmethod
    def create_fpt_solver(cls, config: Optional[Any] = None, threads: Optional[int] = None) -> CutSolverInterface:
        """
        Crea el solucionador FPT de multicorte.

        Args:
            config: Configuración personalizada opcional
            threads: Hilos para la raíz de búsqueda

        Returns:
            CutSolverInterface: Solucionador FPT
        """
        logger.debug(f"Creando FPTMulticutSolver (hilos={threads})")
        return FPTMulticutSolver(config=config, threads=threads)

    @classmethod
    def create_dp_solver(cls, config: Optional[Any] = None) -> CutSolverInterface:
        logger.debug("Creando MultiwayDPSolver")
        return MultiwayDPSolver(config=config)

    @classmethod
    def create_oracle(cls) -> CutSolverInterface:
        return BruteForceSolver()

    @classmethod
    def create_for_mode(cls, mode: Modo, threads: Optional[int] = None) -> CutSolverInterface:
        """
        Solucionador adecuado para un modo: wgmwct usa el programa dinámico,
        mct y gmwct usan la búsqueda FPT.

        Args:
            mode: Modo de la instancia
            threads: Hilos para la búsqueda FPT

        Returns:
            CutSolverInterface: Solucionador
        """
        solver = cls.create_dp_solver() if mode is Modo.WGMWCT else cls.create_fpt_solver(threads=threads)
        validate_interface_implementation(solver, CutSolverInterface)
        return solver

    @classmethod
    def create_generator(cls, use_singleton: bool = True) -> InstanceGeneratorInterface:
        service_key = 'generator'
        if use_singleton and service_key in cls._instances:
            return cls._instances[service_key]
        service = InstanceGeneratorService()
        if use_singleton:
            cls._instances[service_key] = service
        return service

    @classmethod
    def create_bench_service(cls, threads: Optional[int] = None) -> BenchService:
        return BenchService(config=settings.bench, threads=threads)

    @classmethod
    def get_service_status(cls) -> Dict[str, Any]:
        """
        Estado de las instancias singleton.

        Returns:
            Dict[str, Any]: Servicios creados y su tipo
        """
        return {
            'total_instances': len(cls._instances),
            'services': {key: type(value).__name__ for key, value in cls._instances.items()},
        }

    @classmethod
    def clear_instances(cls) -> None:
        logger.debug("Limpiando instancias singleton")
        cls._instances.clear()


def get_solver(mode: Modo, threads: Optional[int] = None) -> CutSolverInterface:
    """Función de conveniencia para obtener el solucionador de un modo."""
    return SolverFactory.create_for_mode(mode, threads)


def get_generator() -> InstanceGeneratorInterface:
    return SolverFactory.create_generator()


__all__ = [
    'SolverFactory',
    'get_solver',
    'get_generator',
]
