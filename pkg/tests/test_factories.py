"""
Pruebas de la fábrica de solucionadores y del servicio de benchmarks.
"""

import pytest

from cortes_arboles.config import settings
from cortes_arboles.core import CutSolverInterface, validate_interface_implementation
from cortes_arboles.factories import SolverFactory, get_generator, get_solver
from cortes_arboles.models import Modo
from cortes_arboles.services.bench_service import BENCH_COLUMNS, BenchService
from cortes_arboles.services.multiway_service import MultiwayDPSolver
from cortes_arboles.services.oracle_service import BruteForceSolver
from cortes_arboles.services.search_service import FPTMulticutSolver


@pytest.fixture(autouse=True)
def clean_factory():
    SolverFactory.clear_instances()
    yield
    SolverFactory.clear_instances()


@pytest.mark.parametrize("mode, expected", [
    (Modo.MCT, FPTMulticutSolver),
    (Modo.GMWCT, FPTMulticutSolver),
    (Modo.WGMWCT, MultiwayDPSolver),
])
def test_solver_by_mode(mode, expected):
    assert isinstance(get_solver(mode), expected)


def test_threads_reach_the_fpt_solver():
    assert SolverFactory.create_fpt_solver(threads=3).threads == 3


def test_interface_validation_rejects_foreign_objects():
    assert validate_interface_implementation(BruteForceSolver(), CutSolverInterface)
    with pytest.raises(TypeError):
        validate_interface_implementation(object(), CutSolverInterface)


def test_generator_is_a_singleton():
    assert get_generator() is get_generator()
    status = SolverFactory.get_service_status()
    assert status['total_instances'] == 1
    assert status['services'] == {'generator': 'InstanceGeneratorService'}
    assert SolverFactory.create_generator(use_singleton=False) is not get_generator()


class TestBench:

    @pytest.fixture
    def service(self, monkeypatch):
        monkeypatch.setattr(settings.bench, 'SHOW_PROGRESS', False)
        return SolverFactory.create_bench_service()

    def test_fpt_sweep(self, service):
        frame = service.run_fpt([3, 5], seeds=2)
        assert list(frame.columns) == BENCH_COLUMNS
        assert len(frame) == 4
        assert (frame['leaves'] >= 1).all()
        assert (frame['rho_bound'] >= 1).all()

    def test_dp_sweep_and_csv(self, service, tmp_path):
        frame = service.run_dp([20, 40], q=2)
        assert frame['n'].tolist() == [20, 40]
        path = tmp_path / "dp.csv"
        text = service.to_csv(frame, path)
        assert path.read_text(encoding='utf-8') == text
        assert isinstance(service, BenchService)
