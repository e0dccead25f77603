"""
Shared fixtures: small named graphs and weight sets.
"""

import networkx as nx
import numpy as np
import pytest

from gdpart_core.graph import Graph
from gdpart_core.weights import WeightSet, build_weight_set


def graph_of(nx_graph) -> Graph:
    return Graph.from_networkx(nx_graph)


@pytest.fixture
def path3():
    return graph_of(nx.path_graph(3))


@pytest.fixture
def path4():
    return graph_of(nx.path_graph(4))


@pytest.fixture
def triangle():
    return graph_of(nx.complete_graph(3))


@pytest.fixture
def two_triangles():
    return graph_of(nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3)))


@pytest.fixture
def k4_dumbbell():
    return graph_of(nx.barbell_graph(4, 0))


@pytest.fixture
def cycle4():
    return graph_of(nx.cycle_graph(4))


@pytest.fixture
def star3():
    return graph_of(nx.star_graph(3))


@pytest.fixture
def unit_and_degree():
    def build(g: Graph) -> WeightSet:
        return build_weight_set(g, 'unit,degree')
    return build


@pytest.fixture
def random_graph():
    """G(n, p) plus a spanning path, so no vertex is isolated."""
    def build(n: int, p: float, seed: int) -> Graph:
        nx_graph = nx.gnp_random_graph(n, p, seed=seed)
        nx.add_path(nx_graph, range(n))
        return graph_of(nx_graph)
    return build


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_weights(rng: np.random.Generator, d: int, n: int) -> np.ndarray:
    """d x n weights in (0, 1]."""
    return 1.0 - rng.random((d, n))
