import numpy as np
import pytest

from steklov.graph import Role, combinatorial_boundary, combinatorial_graph, make_graph


def path_graph(n):
    return combinatorial_graph(n, [(i, i + 1) for i in range(n - 1)])


def random_tree_edges(rng, n):
    """Random labeled tree: attach vertex k to a uniform earlier vertex."""
    return [(int(rng.integers(0, k)), k) for k in range(1, n)]


def random_weighted_graph(rng, n_max=9, ensure_interior=False):
    """Connected weighted graph with random measures and a random boundary."""
    n = int(rng.integers(2, n_max + 1))
    edges = random_tree_edges(rng, n)
    extra = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in set(edges)
    ]
    rng.shuffle(extra)
    edges = edges + extra[: int(rng.integers(0, len(extra) + 1))]
    measures = [float(rng.uniform(0.5, 2.0)) for _ in range(n)]
    hi = n if ensure_interior else n + 1
    bsize = int(rng.integers(1, max(2, hi)))
    bset = set(rng.choice(n, size=bsize, replace=False).tolist())
    roles = [Role.BOUNDARY if v in bset else Role.INTERIOR for v in range(n)]
    return make_graph(
        n,
        [(u, v, float(rng.uniform(0.2, 3.0))) for u, v in edges],
        measures=measures,
        roles=roles,
    )


def random_unit_tree(rng, n):
    g = combinatorial_graph(n, random_tree_edges(rng, n))
    return g.with_roles(combinatorial_boundary(g))


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


@pytest.fixture(scope="session", autouse=True)
def _isolated_enumeration_cache(tmp_path_factory):
    """Keep generated class caches out of the working directory."""
    import os

    os.environ["STEKLOV_CACHE_DIR"] = str(tmp_path_factory.mktemp("class-cache"))
    yield
