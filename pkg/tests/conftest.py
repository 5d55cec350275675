from __future__ import annotations

import random

import pytest

from seev.graph import build_graph


@pytest.fixture
def four_cycle():
    return build_graph([(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)], 4)


@pytest.fixture
def two_triangles():
    # Two disconnected unit triangles on nodes 0-2 and 3-5.
    edges = [
        (0, 1, 1.0),
        (1, 2, 1.0),
        (0, 2, 1.0),
        (3, 4, 1.0),
        (4, 5, 1.0),
        (3, 5, 1.0),
    ]
    return build_graph(edges, 6)


TRIANGLE_EDGES = [
    (0, 1, 1.0),
    (1, 2, 1.0),
    (0, 2, 1.0),
    (3, 4, 1.0),
    (4, 5, 1.0),
    (3, 5, 1.0),
]


def random_weighted_edges(rng: random.Random, node_count: int, p: float):
    """Random undirected edge list with weights in (0.1, 2.0)."""
    edges = []
    for u in range(node_count):
        for v in range(u + 1, node_count):
            if rng.random() < p:
                edges.append((u, v, round(rng.uniform(0.1, 2.0), 6)))
    return edges


def random_partition(rng: random.Random, node_count: int, max_blocks: int):
    blocks = rng.randint(1, max_blocks)
    assignment = [rng.randrange(blocks) for _ in range(node_count)]
    clusters: dict[int, list[int]] = {}
    for v, b in enumerate(assignment):
        clusters.setdefault(b, []).append(v)
    return list(clusters.values())
