"""The definition-level oracle, and its agreement with the optimised
checkers on a full enumeration of small maps."""

import itertools

import pytest

from hychaos.metric import FinitePointSpace
from hychaos.oracle import brute_force_oracle
from hychaos.properties import (
    has_dense_periodic_points,
    has_dense_small_periodic_sets,
    is_topologically_exact,
    is_totally_transitive,
    is_transitive,
    is_weakly_mixing,
)
from hychaos.revalidate import revalidate_verdict
from hychaos.systems import SystemBuildError, make_finite_system

from conftest import finite

CHECKERS = {
    "transitive": is_transitive,
    "totally-transitive": is_totally_transitive,
    "weakly-mixing": is_weakly_mixing,
    "dense-periodic-points": has_dense_periodic_points,
    "dense-small-periodic-sets": has_dense_small_periodic_sets,
    "topologically-exact": is_topologically_exact,
}


def test_oracle_examples():
    identity2 = finite(["a", "b"], [0, 1])
    assert brute_force_oracle(identity2, "transitive").status == "refuted"

    cycle4 = finite(list("1234"), [1, 2, 3, 0])
    assert brute_force_oracle(cycle4, "dense-small-periodic-sets").status == "proved"

    cycle3 = finite(list("123"), [1, 2, 0])
    assert brute_force_oracle(cycle3, "weakly-mixing").status == "refuted"


def test_oracle_size_cap():
    big = finite([f"p{i}" for i in range(7)], [0] * 7)
    with pytest.raises(SystemBuildError):
        brute_force_oracle(big, "transitive")


def test_oracle_rejects_unknown_property():
    with pytest.raises(SystemBuildError):
        brute_force_oracle(finite(["a"], [0]), "sensitivity")


def test_oracle_agrees_on_all_four_point_maps():
    space = FinitePointSpace.uniform(["a", "b", "c", "d"])
    for table in itertools.product(range(4), repeat=4):
        sys = make_finite_system(space, table)
        for prop, checker in CHECKERS.items():
            fast = checker(sys)
            slow = brute_force_oracle(sys, prop)
            assert fast.status == slow.status, (table, prop)


def test_oracle_verdicts_revalidate_on_a_sample():
    space = FinitePointSpace.uniform(["a", "b", "c", "d"])
    samples = [(1, 2, 3, 0), (0, 0, 1, 2), (1, 0, 3, 2), (3, 3, 3, 3), (0, 1, 2, 3)]
    for table in samples:
        sys = make_finite_system(space, table)
        for prop in CHECKERS:
            revalidate_verdict(sys, brute_force_oracle(sys, prop))
