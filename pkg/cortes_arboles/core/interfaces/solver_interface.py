"""
Interface para solucionadores de corte en árboles.
Define el contrato que deben cumplir el solucionador FPT, el programa dinámico
y el oráculo de fuerza bruta.
"""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

from ...models import CutSet, Instance, ResultReport


class CutSolverInterface(ABC):
    """
    Interface abstracta para solucionadores de corte.

    Toda implementación resuelve la versión de optimización y arma el reporte
    estructurado que consume la CLI.
    """

    @abstractmethod
    def solve_min(self, instance: Instance) -> Tuple[int, CutSet]:
        """
        Calcula un corte óptimo.

        Args:
            instance: Instancia validada

        Returns:
            Tuple[int, CutSet]: Valor óptimo (tamaño o costo) y un corte que lo alcanza

        Raises:
            TooLargeError: Si la instancia excede los límites del solucionador
        """
        pass

    @abstractmethod
    def solve(self, instance: Instance, k: Optional[int] = None) -> ResultReport:
        """
        Resuelve y arma el reporte.

        Args:
            instance: Instancia validada
            k: Parámetro de decisión; None para optimizar

        Returns:
            ResultReport: Reporte con estado, corte y estadísticas
        """
        pass
