"""
Interface para generadores de instancias.
"""

from abc import ABC, abstractmethod
from typing import List

from ...models import GenSpec, Instance


class InstanceGeneratorInterface(ABC):
    """
    Interface abstracta para generadores deterministas de instancias.
    """

    @abstractmethod
    def generate(self, spec: GenSpec) -> Instance:
        """
        Genera una instancia a partir de su especificación.

        Args:
            spec: Semilla, tamaño, modo y gadget

        Returns:
            Instance: Instancia válida; la misma especificación produce la misma instancia

        Raises:
            BadSpecError: Si la especificación es inconsistente
        """
        pass

    @abstractmethod
    def list_gadgets(self) -> List[str]:
        """
        Nombres de los gadgets disponibles.

        Returns:
            List[str]: Nombres ordenados
        """
        pass
