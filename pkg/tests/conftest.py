import numpy as np
import pytest

from lapspec.graphs import (
    WeightedGraph,
    bridged_triangles,
    complete_graph,
    cycle_graph,
    looped_pair,
    path_graph,
)


def random_connected_graph(
    rng: np.random.Generator,
    n_max: int = 10,
    *,
    weighted: bool = False,
    allow_loops: bool = False,
    n_min: int = 2,
) -> WeightedGraph:
    """Random spanning tree plus extra edges; always connected.

    Weighted graphs draw dyadic weights (multiples of 1/4) so oracle
    comparisons in exact rational arithmetic stay meaningful.
    """
    n = int(rng.integers(n_min, n_max + 1))
    w = np.zeros((n, n))

    def draw() -> float:
        if not weighted:
            return 1.0
        return float(rng.integers(1, 13)) / 4.0

    order = rng.permutation(n)
    for k in range(1, n):
        a = int(order[k])
        b = int(order[int(rng.integers(0, k))])
        w[a, b] = w[b, a] = draw()
    extra = int(rng.integers(0, n * (n - 1) // 2 + 1))
    for _ in range(extra):
        a, b = (int(v) for v in rng.integers(0, n, size=2))
        if a != b and w[a, b] == 0:
            w[a, b] = w[b, a] = draw()
    if allow_loops:
        for i in range(n):
            if rng.random() < 0.3:
                w[i, i] = draw()
    return WeightedGraph(n=n, weights=w)


def named_fixtures() -> dict[str, WeightedGraph]:
    """The standing zoo of small graphs used across the suite."""
    graphs = {}
    for n in range(2, 9):
        graphs[f"K{n}"] = complete_graph(n)
    for n in (4, 5, 6):
        graphs[f"C{n}"] = cycle_graph(n)
    graphs["P3"] = path_graph(3)
    for c in (0.5, 1.0, 2.0):
        graphs[f"looped_pair({c:g})"] = looped_pair(c)
    for c in (0.5, 1.0):
        graphs[f"bridged_triangles({c:g})"] = bridged_triangles(c)
    return graphs


@pytest.fixture(scope="session")
def fixtures() -> dict[str, WeightedGraph]:
    return named_fixtures()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def pytest_make_parametrize_id(config, val, argname):
    if isinstance(val, str):
        return val
    return None
