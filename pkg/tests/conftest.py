import random

import pytest

from polydom import decompose_heuristic, make_nice
from polydom.generators import erdos_renyi


def er_corpus(count: int, max_n: int, seed: int):
    """Seeded Erdos-Renyi graphs with ``p`` cycling through 0.1..0.9."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_n)
        p = round(0.1 * (1 + i % 9), 1)
        out.append(erdos_renyi(n, p, seed=rng.randrange(1 << 30)))
    return out


def nice_of(g, strategy="min-fill"):
    return make_nice(decompose_heuristic(g, strategy), g)


@pytest.fixture
def nice():
    return nice_of
