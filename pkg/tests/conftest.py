import random

import pytest

from strangeval.scalars import is_integer
from strangeval.verify import random_non_integer, random_rational


@pytest.fixture(scope="session")
def param_pool():
    """Deterministic pool of (a, c) pairs: numerators and denominators
    bounded by 20, c never an integer."""
    rng = random.Random(20260809)
    pool = []
    for _ in range(400):
        a = random_rational(rng)
        c = random_non_integer(rng)
        pool.append((a, c))
    return pool


@pytest.fixture(scope="session")
def noninteger_pool(param_pool):
    """Pairs from param_pool whose a is not an integer."""
    return [(a, c) for a, c in param_pool if not is_integer(a)]
