"""
Fixtures compartidas por las pruebas.
"""

import pytest

from cortes_arboles.models import build_instance
from cortes_arboles.services.generator_service import GADGETS


@pytest.fixture
def star_triangle():
    return GADGETS['star-triangle']()


@pytest.fixture
def path_instance():
    """Camino 0-1-2-3 con solicitudes (0, 3) y (1, 2)."""
    return build_instance([(0, 1), (1, 2), (2, 3)], [(0, 3), (1, 2)])


@pytest.fixture
def sample_text():
    return (
        "c instancia de ejemplo\n"
        "p tct 4 mct\n"
        "e 1 2\n"
        "e 1 3\n"
        "e 1 4\n"
        "q 2 3\n"
        "q 2 4\n"
        "q 3 4\n"
        "k 2\n"
    )
