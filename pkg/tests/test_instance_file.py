"""
Pruebas del formato de archivo de instancias y cortes.
"""

import pytest

from cortes_arboles.core.exceptions import NotATreeError, ParseError
from cortes_arboles.models import GenSpec, Modo, build_instance
from cortes_arboles.services.forest import root_forest
from cortes_arboles.services.generator_service import generate
from cortes_arboles.services.instance_file_service import (
    format_cut,
    format_instance,
    parse,
    parse_cut_text,
    parse_text,
    reduced_instance,
    write_instance,
)
from cortes_arboles.services.reduction_service import reduce_to_fixpoint


def test_parse_sample(sample_text, star_triangle):
    instance = parse_text(sample_text)
    assert instance.mode is Modo.MCT
    assert instance.k == 2
    assert instance.with_k(None) == star_triangle


@pytest.mark.parametrize("spec", [
    GenSpec(seed=1, n=6, requests=4),
    GenSpec(seed=2, n=6, requests=0, q=2),
    GenSpec(seed=3, n=6, requests=0, q=2, weight_range=(0, 50)),
])
def test_format_then_parse(spec):
    instance = generate(spec).with_k(3)
    assert parse_text(format_instance(instance, ["generada"])) == instance


def test_write_and_read(tmp_path, star_triangle):
    path = write_instance(star_triangle, tmp_path / "estrella.tct")
    assert parse(path) == star_triangle


def test_weighted_edge_cost_defaults_to_one():
    instance = parse_text("p tct 3 wgmwct\ne 1 2 7\ne 2 3\nt 1 1 3\n")
    assert instance.costs == (7, 1)
    assert instance.terminal_sets == (frozenset({0, 2}),)


def test_terminal_set_lines_accumulate():
    instance = parse_text("p tct 3 gmwct\ne 1 2\ne 2 3\nt 1 1\nt 1 3\n")
    assert instance.terminal_sets == (frozenset({0, 2}),)


@pytest.mark.parametrize("text, line", [
    ("e 1 2\n", 1),
    ("p tct 2 mct\nx 1 2\n", 2),
    ("p tct 2 mct\ne 1 2 5\n", 2),
    ("p tct 2 mct\ne 1 a\n", 2),
    ("p tct 2 gmwct\ne 1 2\nq 1 2\n", 3),
    ("p tct 2 mct\ne 1 2\nt 1 1 2\n", 3),
    ("p tct 2 mct\np tct 2 mct\n", 2),
    ("p tct 2 xyz\n", 1),
    ("c solo comentarios\n", 0),
])
def test_parse_errors_carry_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    assert info.value.line == line


def test_structural_errors_are_instance_errors():
    with pytest.raises(NotATreeError):
        parse_text("p tct 3 mct\ne 1 2\ne 2 1\n")


class TestCuts:

    def test_parse_cut(self, star_triangle):
        cut = parse_cut_text("c corte\ne 1 2\n1 3\n", star_triangle)
        assert sorted(cut.edges) == [0, 1]
        assert format_cut(star_triangle, cut) == "e 1 2\ne 1 3\n"

    def test_unknown_edge(self, star_triangle):
        with pytest.raises(ParseError):
            parse_cut_text("e 2 3\n", star_triangle)


def test_reduced_instance_is_a_tree_with_the_remaining_budget():
    instance = build_instance([(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6)],
                              [(2, 3), (5, 6), (2, 5)], k=3)
    forest = root_forest(instance)
    reduce_to_fixpoint(forest)
    reduced, comments = reduced_instance(forest)
    assert len(reduced.edges) == reduced.n - 1
    assert reduced.k == forest.budget
    assert comments[0] == f"cortes forzados: {len(forest.committed_cut)}"
