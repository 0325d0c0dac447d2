import numpy as np
import pytest

from rigidcomp.graphs import Graph


def random_graph(rng: np.random.Generator, n_max: int = 8, n_min: int = 2) -> Graph:
    """Random labeled graph with uniformly drawn size and density."""
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(0.0, 0.9))
    edges = set()
    for v in range(n):
        for u in range(v):
            if rng.random() < p:
                edges.add((u, v))
    return Graph._from_trusted(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
