"""Reusable dependency injected testing components."""
import json
import os

import pytest

from galeforge import PolarizedArrangement
from galeforge.contrib.graph import Graph, abelianize, to_arrangement


def mock_path(filename):
    """Absolute path of a file in ``tests/mocks``."""
    cur_fp = os.path.realpath(__file__)
    cur_dir = os.path.dirname(cur_fp)
    return os.path.join(cur_dir, "mocks", filename)


def load_mock(filename):
    """Load a json mock file."""
    with open(mock_path(filename)) as fh:
        return json.load(fh)


@pytest.fixture
def tp1():
    """Cotangent bundle of the projective line: two coordinates of weight 1."""
    return PolarizedArrangement.from_json(load_mock("tp1.json"))


@pytest.fixture
def tp2():
    """Cotangent bundle of the projective plane."""
    return PolarizedArrangement.from_json(load_mock("tp2.json"))


@pytest.fixture
def three_cycle_graph():
    return Graph.from_json(load_mock("three_cycle_graph.json"))


@pytest.fixture
def three_cycle(three_cycle_graph):
    """Cographical arrangement of the oriented triangle."""
    return to_arrangement(three_cycle_graph, (1, 1), (1, 0, 0))


@pytest.fixture
def two_edge():
    """Two vertices joined by two oppositely oriented edges."""
    graph = Graph.from_json(load_mock("two_vertex_graph.json"))
    return to_arrangement(graph, (1,), (1, 0))


@pytest.fixture
def flag_22():
    """Abelianized linear quiver with dimension vector (2, 2)."""
    return to_arrangement(abelianize((2, 2)), (1, 1, 1), (1, 0, 0, 0))


@pytest.fixture
def flag_123():
    """Abelianized linear quiver with dimension vector (1, 2, 3)."""
    return to_arrangement(
        abelianize((1, 2, 3)), (1,) * 5, tuple(2 ** i for i in range(8))
    )


@pytest.fixture(params=["tp1", "tp2", "three_cycle", "two_edge", "flag_22"])
def fleet(request):
    """Each small arrangement in turn."""
    return request.getfixturevalue(request.param)
