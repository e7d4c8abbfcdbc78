import random

import pytest

from strongcospec.graphs import TreeStream
from strongcospec.harness import random_graph


@pytest.fixture(scope="session")
def trees_by_order():
    return dict(TreeStream(9).by_order())


@pytest.fixture(scope="session")
def small_trees(trees_by_order):
    return [t for n in sorted(trees_by_order) for t in trees_by_order[n]]


@pytest.fixture(scope="session")
def random_graphs_8():
    rng = random.Random(2024)
    return [random_graph(rng, rng.randint(2, 8), rng.choice((0.25, 0.4, 0.6))) for _ in range(40)]
