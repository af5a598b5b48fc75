"""
Pruebas de la interfaz de línea de comandos.
"""

import json

import pytest

from cortes_arboles.config import settings
from cortes_arboles.main import EXIT_NO, EXIT_OK, EXIT_USAGE, run
from cortes_arboles.services.bench_service import BENCH_COLUMNS
from cortes_arboles.services.instance_file_service import parse


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "estrella.tct"
    assert run(['gen', '--gadget', 'star-triangle', '--output', str(path)]) == EXIT_OK
    return path


@pytest.fixture(autouse=True)
def quiet_progress(monkeypatch):
    monkeypatch.setattr(settings.bench, 'SHOW_PROGRESS', False)


def test_gen_writes_a_parsable_file(star_file, star_triangle):
    assert parse(star_file) == star_triangle


def test_gen_list(capsys):
    assert run(['gen', '--list']) == EXIT_OK
    assert 'star-triangle' in capsys.readouterr().out.split()


def test_solve_min_json(star_file, capsys):
    assert run(['solve', '--input', str(star_file), '--min', '--json']) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['status'] == 'optimal'
    assert report['size'] == 2
    assert len(report['cut']) == 2


def test_solve_decision(star_file, capsys):
    assert run(['solve', '--input', str(star_file), '--k', '2', '--json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['status'] == 'yes'
    assert run(['solve', '--input', str(star_file), '--k', '1']) == EXIT_NO


def test_solve_with_oracle(star_file, capsys):
    assert run(['solve', '--input', str(star_file), '--min', '--mode', 'oracle', '--json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['size'] == 2


def test_solve_weighted_uses_the_dp(tmp_path, capsys):
    path = tmp_path / "pesos.tct"
    path.write_text("p tct 4 wgmwct\ne 1 2 4\ne 2 3 1\ne 3 4 6\nt 1 1 4\n", encoding='utf-8')
    assert run(['solve', '--input', str(path), '--min', '--json']) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['cost'] == 1
    assert report['cut'] == [[2, 3]]


def test_verify(star_file, tmp_path, capsys):
    good = tmp_path / "bueno.txt"
    good.write_text("e 1 2\ne 1 3\n", encoding='utf-8')
    bad = tmp_path / "malo.txt"
    bad.write_text("e 1 2\n", encoding='utf-8')
    assert run(['verify', '--input', str(star_file), '--cut', str(good), '--json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['status'] == 'valid'
    assert run(['verify', '--input', str(star_file), '--cut', str(bad)]) == EXIT_NO


def test_reduce_prints_an_instance(tmp_path, capsys):
    path = tmp_path / "camino.tct"
    path.write_text("p tct 4 mct\ne 1 2\ne 2 3\ne 3 4\nq 1 2\nq 1 4\nk 2\n", encoding='utf-8')
    assert run(['reduce', '--input', str(path)]) == EXIT_OK
    assert 'p tct' in capsys.readouterr().out


def test_reduce_infeasible(tmp_path):
    path = tmp_path / "imposible.tct"
    path.write_text("p tct 2 mct\ne 1 2\nq 1 2\nk 0\n", encoding='utf-8')
    assert run(['reduce', '--input', str(path)]) == EXIT_NO


@pytest.mark.parametrize("argv", [
    [],
    ['solve', '--input', 'no-existe.tct', '--min'],
    ['solve', '--k', 'dos'],
    ['solve', '--k', '1', '--min'],
    ['gen', '--gadget', 'nope'],
    ['verify'],
])
def test_usage_and_input_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "roto.tct"
    path.write_text("p tct 2 mct\ne 1 x\n", encoding='utf-8')
    assert run(['solve', '--input', str(path), '--min']) == EXIT_USAGE


def test_errors_are_reported_as_json(tmp_path, capsys):
    path = tmp_path / "roto.tct"
    path.write_text("p tct 2 mct\ne 1 x\n", encoding='utf-8')
    assert run(['solve', '--input', str(path), '--min', '--json']) == EXIT_USAGE
    report = json.loads(capsys.readouterr().out)
    assert report['status'] == 'error'
    assert report['error']['code'] == 'PARSE_ERROR'
    assert report['error']['details']['line'] == 2


def test_missing_file_is_a_file_error(capsys):
    assert run(['verify', '--input', 'no-existe.tct', '--cut', 'x', '--json']) == EXIT_USAGE
    assert json.loads(capsys.readouterr().out)['error']['code'] == 'FILE_ERROR'


def test_help_exits_cleanly():
    assert run(['--help']) == EXIT_OK


def test_bench_fpt_csv(capsys):
    assert run(['bench', '--sizes', '4', '--seeds', '2']) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(',') == BENCH_COLUMNS
    assert len(lines) == 3


def test_bench_dp_to_file(tmp_path):
    output = tmp_path / "dp.csv"
    assert run(['bench', '--dp', '--sizes', '30', '--output', str(output)]) == EXIT_OK
    assert output.read_text(encoding='utf-8').splitlines()[0] == 'n,q,cost,vertices,time'
