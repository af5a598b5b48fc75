"""
Contratos de los servicios intercambiables.

- CutSolverInterface: solucionadores (FPT, programa dinámico, oráculo)
- InstanceGeneratorInterface: generadores de instancias
"""

from .solver_interface import CutSolverInterface
from .generator_interface import InstanceGeneratorInterface

__all__ = [
    'CutSolverInterface',
    'InstanceGeneratorInterface',
]
