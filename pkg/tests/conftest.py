import random

import pytest

from transversal_injection.amplitude import random_chi
from transversal_injection.lattice import build_layout


@pytest.fixture(scope="session")
def d2():
    return build_layout(2)


@pytest.fixture(scope="session")
def d3():
    return build_layout(3)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def chis(rng):
    return [random_chi(rng) for _ in range(20)]
