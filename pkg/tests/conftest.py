import random

import pytest

from treecells import Algebra, TreeInstance, path_instance, random_instance
from treecells.selftest import load_fixtures

EDGE = TreeInstance(2, ((1, 2),), {2})
EDGE_FULL = TreeInstance(2, ((1, 2),), {1, 2})
PATH3 = TreeInstance(3, ((1, 2), (2, 3)), {3})
STAR = TreeInstance(4, ((1, 2), (2, 3), (2, 4)), {3, 4})
STAR_EMPTY = TreeInstance(4, ((1, 2), (1, 3), (1, 4)))


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture(scope="session")
def edge():
    return Algebra(EDGE)


@pytest.fixture(scope="session")
def path3():
    return Algebra(PATH3)


@pytest.fixture(scope="session")
def star():
    return Algebra(STAR)


def random_instances(seed, count, n_max=8):
    rng = random.Random(seed)
    return [random_instance(rng, 2, n_max) for _ in range(count)]


def example1(n):
    return path_instance(n)
