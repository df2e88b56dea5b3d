"""Shared helpers for randomized suites."""

from __future__ import annotations

import random

from qgspectra.multigraph import MetricGraph


def random_connected_graph(
    rng: random.Random,
    max_vertices: int = 12,
    max_extra: int = 4,
    max_len: int = 4,
) -> MetricGraph:
    """Random spanning tree plus a few extra edges; always connected."""
    n = rng.randint(1, max_vertices)
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v, rng.randint(1, max_len)))
    for _ in range(rng.randint(1 if n == 1 else 0, max_extra)):
        edges.append((rng.randrange(n), rng.randrange(n), rng.randint(1, max_len)))
    return MetricGraph(n, tuple(edges))
