"""
Core del Solucionador de Cortes en Árboles
==========================================

Interfaces que deben cumplir los solucionadores y el generador, y la jerarquía
de excepciones del dominio.
"""

# =============================================================================
# IMPORTACIÓN DE EXCEPCIONES
# =============================================================================

from .exceptions import (
    # Excepción base
    CortesArbolesError,

    # Instancia
    InstanceError,
    NotATreeError,
    BadVertexIdError,
    SelfRequestError,
    ValidationError,

    # Búsqueda
    SearchSignal,
    BudgetExhausted,
    InfeasibleBranch,

    # Análisis
    AnalysisError,
    DegreeTooHighError,
    UnclassifiableComponentError,
    CaseAnalysisViolation,

    # Programación dinámica
    DynamicProgrammingError,
    EmptyAfterPreprocessing,
    TooManyTerminalSetsError,

    # Oráculo, generador y archivos
    TooLargeError,
    BadSpecError,
    ParseError,

    # Utilidades de excepciones
    format_error_details,
    create_error_response
)

# =============================================================================
# IMPORTACIÓN DE INTERFACES
# =============================================================================

from .interfaces import (
    CutSolverInterface,
    InstanceGeneratorInterface
)


def validate_interface_implementation(instance, interface_class) -> bool:
    """
    Valida que una instancia implemente una interfaz.

    Args:
        instance: Instancia a validar
        interface_class: Clase de interfaz que debe implementar

    Returns:
        bool: True si implementa la interfaz

    Raises:
        TypeError: Si la instancia no implementa la interfaz o algún método abstracto
    """
    if not isinstance(instance, interface_class):
        raise TypeError(
            f"La instancia {type(instance).__name__} no implementa {interface_class.__name__}"
        )
    for method_name in getattr(interface_class, '__abstractmethods__', set()):
        if not callable(getattr(instance, method_name, None)):
            raise TypeError(
                f"La instancia {type(instance).__name__} no implementa el método requerido: {method_name}"
            )
    return True


__all__ = [
    # Excepciones
    'CortesArbolesError',
    'InstanceError',
    'NotATreeError',
    'BadVertexIdError',
    'SelfRequestError',
    'ValidationError',
    'SearchSignal',
    'BudgetExhausted',
    'InfeasibleBranch',
    'AnalysisError',
    'DegreeTooHighError',
    'UnclassifiableComponentError',
    'CaseAnalysisViolation',
    'DynamicProgrammingError',
    'EmptyAfterPreprocessing',
    'TooManyTerminalSetsError',
    'TooLargeError',
    'BadSpecError',
    'ParseError',
    'format_error_details',
    'create_error_response',

    # Interfaces
    'CutSolverInterface',
    'InstanceGeneratorInterface',
    'validate_interface_implementation',
]
