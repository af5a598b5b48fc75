"""
Pruebas del generador determinista de instancias.
"""

import networkx as nx
import numpy as np
import pytest

from cortes_arboles.core.exceptions import BadSpecError
from cortes_arboles.models import GenSpec, Modo, ModoGeneracion
from cortes_arboles.services.generator_service import (
    GADGETS,
    InstanceGeneratorService,
    caterpillar_edges,
    generate,
    random_tree_edges,
    star_edges,
)


def _is_tree(edges, n):
    graph = nx.Graph(edges)
    graph.add_nodes_from(range(n))
    return nx.is_tree(graph)


def test_same_seed_same_instance():
    spec = GenSpec(seed=11, n=9, requests=5)
    assert generate(spec) == generate(spec)


def test_different_seeds_differ():
    assert len({generate(GenSpec(seed=s, n=12, requests=6)) for s in range(5)}) > 1


@pytest.mark.parametrize("n", [1, 2, 7, 30])
def test_shapes_are_trees(n):
    assert _is_tree(random_tree_edges(n, np.random.default_rng(0)), n + 1)
    assert _is_tree(star_edges(n), n + 1)
    assert _is_tree(caterpillar_edges(n), n + 1)
    assert len(caterpillar_edges(n)) == n


def test_star_mode():
    instance = generate(GenSpec(seed=0, n=5, requests=3, mode=ModoGeneracion.STAR))
    assert instance.edges == tuple((0, i) for i in range(1, 6))
    assert len(instance.requests) == 3


def test_request_count_is_capped_by_pairs():
    instance = generate(GenSpec(seed=0, n=2, requests=50))
    assert len(instance.requests) == 3


def test_terminal_sets():
    instance = generate(GenSpec(seed=3, n=10, requests=0, q=3))
    assert instance.mode is Modo.GMWCT
    assert instance.q == 3
    assert all(2 <= len(s) <= 3 for s in instance.terminal_sets)


def test_weighted_terminal_sets():
    instance = generate(GenSpec(seed=3, n=10, requests=0, q=2, weight_range=(5, 9)))
    assert instance.mode is Modo.WGMWCT
    assert all(5 <= c <= 9 for c in instance.costs)


def test_gadgets_are_listed_and_valid():
    service = InstanceGeneratorService()
    assert service.list_gadgets() == sorted(GADGETS)
    for name in service.list_gadgets():
        instance = service.generate(GenSpec(mode=ModoGeneracion.GADGET, gadget=name))
        assert instance.requests


def test_unknown_gadget():
    with pytest.raises(BadSpecError):
        generate(GenSpec(mode=ModoGeneracion.GADGET, gadget='nope'))
