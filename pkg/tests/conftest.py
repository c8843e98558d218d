"""Shared graphs and random generators for the test suite."""

import random
from typing import Optional

import pytest

from plumbing_calculus.models import AugmentedGraph, PlumbingGraph, Vertex
from plumbing_calculus.tools.recognition import build_star


def chain(*self_ints: int, area: Optional[tuple] = None):
    """Linear graph ``v1 - v2 - ...`` with the given self-intersections."""
    ids = [f"v{i}" for i in range(1, len(self_ints) + 1)]
    graph = PlumbingGraph(tuple(Vertex(vid, 0, s) for vid, s in zip(ids, self_ints)),
                          tuple(zip(ids, ids[1:])))
    return graph if area is None else AugmentedGraph(graph, area)


def random_tree(rng: random.Random, k: int, low: int = -4, high: int = 2) -> PlumbingGraph:
    ids = [f"v{i}" for i in range(1, k + 1)]
    vertices = tuple(Vertex(vid, 0, rng.randint(low, high)) for vid in ids)
    edges = tuple((ids[rng.randrange(i)], ids[i]) for i in range(1, k))
    return PlumbingGraph(vertices, edges)


def random_connected_matrix(rng: random.Random, k: int, low: int = -5, high: int = 3):
    """Symmetric matrix of a connected multigraph: a random tree plus extra edges."""
    m = [[0] * k for _ in range(k)]
    for i in range(1, k):
        j = rng.randrange(i)
        m[i][j] += 1
        m[j][i] += 1
    for _ in range(rng.randint(0, k)):
        i, j = rng.sample(range(k), 2) if k > 1 else (0, 0)
        if i != j:
            m[i][j] += 1
            m[j][i] += 1
    for i in range(k):
        m[i][i] = rng.randint(low, high)
    return m


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def example21():
    """``(2)-(1)`` with areas ``(3, 2)``."""
    return chain(2, 1, area=(3, 2))


@pytest.fixture
def e8():
    return build_star(2, (2, 1), (3, 2), (5, 4))


@pytest.fixture
def e8_cap():
    return build_star(1, (2, 1), (3, 1), (5, 1))


@pytest.fixture
def tetrahedral_t3():
    """``<2; 2,1; 3,1; 3,1>``: centre o(-2), legs a1(-2), b1(-3), c1(-3)."""
    return build_star(2, (2, 1), (3, 1), (3, 1))


@pytest.fixture
def nonstandard():
    """``u1(-3) - u2(-2) - u3(-2) - u4(1)`` with ``w(-2)`` hanging off ``u2``."""
    vertices = (Vertex("u1", 0, -3), Vertex("u2", 0, -2), Vertex("u3", 0, -2),
                Vertex("u4", 0, 1), Vertex("w", 0, -2))
    edges = (("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u2", "w"))
    return PlumbingGraph(vertices, edges)
