"""
Jerarquía de excepciones del paquete.

Los errores de entrada (instancia o archivo) terminan la CLI con
código 2; las señales de búsqueda nunca salen del solucionador.
"""


class CortesArbolesError(Exception):
    """
    Error base del paquete.

    Attributes:
        message: Mensaje legible
        error_code: Código estable para el reporte JSON
        details: Datos serializables del contexto
    """

    def __init__(self, message: str, error_code: str = None, details: dict = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self):
        error_info = f"[{self.error_code}] " if self.error_code else ""
        return f"{error_info}{self.message}"


# =============================================================================
# EXCEPCIONES DE INSTANCIA
# =============================================================================

class InstanceError(CortesArbolesError):
    """Error base para instancias inválidas."""
    pass


class NotATreeError(InstanceError):
    """Las aristas contienen un ciclo o no conectan todos los vértices."""
    pass


class BadVertexIdError(InstanceError):
    """Un extremo de arista, solicitud o terminal está fuera de rango."""
    pass


class SelfRequestError(InstanceError):
    """Solicitud (u, u)."""
    pass


class ValidationError(InstanceError):
    """Instancia mal formada a nivel semántico."""
    pass


# =============================================================================
# SEÑALES DE BÚSQUEDA
# =============================================================================

class SearchSignal(CortesArbolesError):
    """Señal que poda un lado de ramificación; no es un fallo del programa."""
    pass


class BudgetExhausted(SearchSignal):
    """Un corte excede el presupuesto restante."""
    pass


class InfeasibleBranch(SearchSignal):
    """Un lado de ramificación no admite solución (p. ej. solicitud unitaria contraída)."""
    pass


# =============================================================================
# EXCEPCIONES DE ANÁLISIS
# =============================================================================

class AnalysisError(CortesArbolesError):
    """Error base del análisis estructural."""
    pass


class DegreeTooHighError(AnalysisError):
    """Grafo auxiliar con grado máximo mayor que 2."""
    pass


class UnclassifiableComponentError(AnalysisError):
    """Componente de G* que no corresponde a ningún grupo."""
    pass


class CaseAnalysisViolation(AnalysisError):
    """Una precondición prometida por una fase anterior no se cumple."""
    pass


# =============================================================================
# EXCEPCIONES DE PROGRAMACIÓN DINÁMICA
# =============================================================================

class DynamicProgrammingError(CortesArbolesError):
    """Error base de la programación dinámica."""
    pass


class EmptyAfterPreprocessing(DynamicProgrammingError):
    """No quedan terminales que separar tras el preprocesamiento."""
    pass


class TooManyTerminalSetsError(DynamicProgrammingError):
    """q supera el tope configurado."""
    pass


# =============================================================================
# EXCEPCIONES DE ORÁCULO Y GENERADOR
# =============================================================================

class TooLargeError(CortesArbolesError):
    """Instancia demasiado grande para la enumeración exhaustiva."""
    pass


class BadSpecError(CortesArbolesError):
    """Especificación de generación inválida."""
    pass


# =============================================================================
# EXCEPCIONES DE ARCHIVOS
# =============================================================================

class ParseError(CortesArbolesError):
    """Error de sintaxis en un archivo de instancia, con número de línea."""

    def __init__(self, line: int, reason: str, details: dict = None):
        self.line = line
        self.reason = reason
        super().__init__(
            f"línea {line}: {reason}",
            error_code="PARSE_ERROR",
            details={'line': line, **(details or {})}
        )


# =============================================================================
# UTILIDADES PARA MANEJO DE EXCEPCIONES
# =============================================================================

def format_error_details(error: CortesArbolesError) -> dict:
    """Tipo, código, mensaje y detalles de un error, para el log de depuración."""
    return {
        'error_type': type(error).__name__,
        'error_code': error.error_code,
        'message': error.message,
        'details': error.details,
    }


def create_error_response(error: CortesArbolesError) -> dict:
    """
    Reporte JSON de un fallo, con la misma forma de nivel superior que ResultReport.

    Args:
        error: Error del paquete

    Returns:
        dict: {'status': 'error', 'error': {...}}
    """
    return {
        'status': 'error',
        'error': {
            'type': type(error).__name__,
            'code': error.error_code or 'UNKNOWN_ERROR',
            'message': error.message,
            'details': error.details,
        },
    }


__all__ = [
    # Base
    'CortesArbolesError',

    # Instancia
    'InstanceError',
    'NotATreeError',
    'BadVertexIdError',
    'SelfRequestError',
    'ValidationError',

    # Búsqueda
    'SearchSignal',
    'BudgetExhausted',
    'InfeasibleBranch',

    # Análisis
    'AnalysisError',
    'DegreeTooHighError',
    'UnclassifiableComponentError',
    'CaseAnalysisViolation',

    # Programación dinámica
    'DynamicProgrammingError',
    'EmptyAfterPreprocessing',
    'TooManyTerminalSetsError',

    # Oráculo y generador
    'TooLargeError',
    'BadSpecError',

    # Archivos
    'ParseError',

    # Utilidades
    'format_error_details',
    'create_error_response',
]
