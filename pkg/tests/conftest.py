import random
from fractions import Fraction

import pytest

from hychaos.metric import FinitePointSpace
from hychaos.systems import make_finite_system, make_shift_system, tent_map


def finite(labels, table, space=None):
    return make_finite_system(space or FinitePointSpace.uniform(labels), table)


def shift(rows, alphabet=None):
    alphabet = alphabet or [str(i) for i in range(len(rows))]
    return make_shift_system(alphabet, rows)


@pytest.fixture
def singleton():
    return finite(["p"], [0])


@pytest.fixture
def identity_two():
    return finite(["a", "b"], [0, 1])


@pytest.fixture
def cycle4():
    return finite(["1", "2", "3", "4"], [1, 2, 3, 0])


@pytest.fixture
def collapse12():
    # 1 -> 2, 2 -> 2
    return finite(["1", "2"], [1, 1])


@pytest.fixture
def full2():
    return shift([[1, 1], [1, 1]])


@pytest.fixture
def full3():
    return shift([[1, 1, 1], [1, 1, 1], [1, 1, 1]])


@pytest.fixture
def golden_mean():
    return shift([[1, 1], [1, 0]])


@pytest.fixture
def period2():
    return shift([[0, 1], [1, 0]])


@pytest.fixture
def primitive_0111():
    return shift([[0, 1], [1, 1]])


@pytest.fixture
def tent():
    return tent_map()


def battery_systems():
    """The standard instance battery, in a fixed order."""
    return [
        ("singleton", finite(["p"], [0])),
        ("identity-2", finite(["a", "b"], [0, 1])),
        ("cycle-4", finite(["1", "2", "3", "4"], [1, 2, 3, 0])),
        ("collapse-12", finite(["1", "2"], [1, 1])),
        ("full-2-shift", shift([[1, 1], [1, 1]])),
        ("full-3-shift", shift([[1, 1, 1], [1, 1, 1], [1, 1, 1]])),
        ("golden-mean", shift([[1, 1], [1, 0]])),
        ("period-2", shift([[0, 1], [1, 0]])),
        ("primitive-01-11", shift([[0, 1], [1, 1]])),
    ]


def random_metric_space(rng: random.Random, size: int) -> FinitePointSpace:
    """Random exact metric: positive rational weights closed under shortest
    paths (the closure restores the triangle inequality)."""
    labels = [f"p{i}" for i in range(size)]
    dist = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            w = Fraction(rng.randint(1, 12), rng.randint(1, 6))
            dist[i][j] = dist[j][i] = w
    for k in range(size):
        for i in range(size):
            for j in range(size):
                through = dist[i][k] + dist[k][j]
                if i != j and through < dist[i][j]:
                    dist[i][j] = through
    return FinitePointSpace(tuple(labels), tuple(tuple(row) for row in dist))


def random_essential_shift(rng: random.Random, size: int):
    """Random transition matrix that survives trimming with its full alphabet:
    a random permutation backbone plus random extra edges."""
    perm = list(range(size))
    rng.shuffle(perm)
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][perm[i]] = 1
    for i in range(size):
        for j in range(size):
            if rng.random() < 0.3:
                rows[i][j] = 1
    return make_shift_system([str(i) for i in range(size)], rows)


def random_finite_system(rng: random.Random, size: int):
    labels = [f"x{i}" for i in range(size)]
    table = [rng.randrange(size) for _ in range(size)]
    return finite(labels, table)
