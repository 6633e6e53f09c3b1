"""Constructive witness transformers: periodic points through cylinders,
invariant-family unions, eventual-image kernels, and witness combination."""

import random

import pytest

from hychaos.systems import SystemBuildError, make_shift_system
from hychaos.witnesses import (
    FamilyWitness,
    NoCycleError,
    WitnessError,
    combine_witnesses,
    find_periodic_point_in_cylinder,
    periodic_kernel,
    primitive_root,
    shift_point,
    union_closure,
)

from conftest import finite, random_finite_system, shift


# ---------------------------------------------------------------------------
# periodic words
# ---------------------------------------------------------------------------


def test_primitive_root():
    assert primitive_root("0") == "0"
    assert primitive_root("0101") == "01"
    assert primitive_root("011") == "011"


def test_shift_point_rotates():
    assert shift_point("01", 1) == "10"
    assert shift_point("01", 2) == "01"
    assert shift_point("0101", 1) == "10"


def test_find_periodic_point_full_shift(full2):
    assert find_periodic_point_in_cylinder(full2, "0") == ("0", 1)


def test_find_periodic_point_golden_mean(golden_mean):
    word, period = find_periodic_point_in_cylinder(golden_mean, "1")
    assert (word, period) == ("10", 2)


def test_find_periodic_point_longer_cylinder(golden_mean):
    word, period = find_periodic_point_in_cylinder(golden_mean, "01")
    assert word == "01" and period == 2
    assert golden_mean.word_allowed_cyclic(word)


def test_one_way_transition_rejected_or_cycle_free():
    # a -> b only: everything trims away, so construction is rejected
    with pytest.raises(SystemBuildError):
        make_shift_system(["a", "b"], [[0, 1], [0, 0]])
    # keep b alive with a self-loop: a still trims, its word becomes unknown
    sft = make_shift_system(["a", "b"], [[0, 1], [0, 1]])
    assert sft.alphabet == ("b",)
    with pytest.raises(SystemBuildError):
        find_periodic_point_in_cylinder(sft, "a")
    # essential but reducible: the cylinder of "01" has no return path
    reducible = shift([[1, 1], [0, 1]])
    with pytest.raises(NoCycleError):
        find_periodic_point_in_cylinder(reducible, "01")


# ---------------------------------------------------------------------------
# union closure
# ---------------------------------------------------------------------------


def test_union_closure_singleton_family():
    sys = finite(["a"], [0])
    witness = union_closure(FamilyWitness((0b1,), 1), 0b1, sys)
    assert witness.invariant_set == 0b1 and witness.k == 1


def test_union_closure_swap_family():
    sys = finite(["a", "b"], [1, 0])
    family = FamilyWitness((0b01, 0b11), 2)  # {a} and {a,b}, second iterate
    witness = union_closure(family, 0b11, sys)
    assert witness.invariant_set == 0b11
    assert witness.k == 2
    witness.validate(sys)


def test_union_closure_rejects_escaping_family():
    sys = finite(["a", "b"], [1, 1])  # a -> b
    with pytest.raises(WitnessError):
        union_closure(FamilyWitness((0b01,), 1), 0b01, sys)


# ---------------------------------------------------------------------------
# periodic kernel
# ---------------------------------------------------------------------------


def test_kernel_of_fixed_point():
    sys = finite(["a"], [0])
    assert periodic_kernel(0b1, 1, sys) == 0b1


def test_kernel_shrinks_to_eventual_image():
    sys = finite(["1", "2", "3"], [1, 2, 1])  # 1->2, 2->3, 3->2
    kernel = periodic_kernel(0b111, 1, sys)
    assert kernel == 0b110  # {2, 3}


def test_kernel_of_cycle_is_itself():
    sys = finite(["1", "2", "3", "4"], [1, 2, 3, 0])
    assert periodic_kernel(0b1111, 4, sys) == 0b1111


def test_kernel_requires_subinvariance():
    sys = finite(["1", "2"], [1, 1])
    with pytest.raises(WitnessError):
        periodic_kernel(0b01, 1, sys)  # image {2} is not inside {1}


def test_kernel_randomized_precondition_satisfying_inputs():
    rng = random.Random(101)
    done = 0
    while done < 100:
        sys = random_finite_system(rng, rng.randint(2, 12))
        k = rng.randint(1, 4)
        seed_mask = 1 << rng.randrange(sys.size)
        # close the seed forward under the k-th iterate so the precondition holds
        y = seed_mask
        while True:
            image = y
            for _ in range(k):
                image = sys.image_mask(image)
            if image & ~y == 0:
                break
            y |= image
        kernel = periodic_kernel(y, k, sys)
        assert kernel and kernel & ~y == 0
        image = kernel
        for _ in range(k):
            image = sys.image_mask(image)
        assert image == kernel  # equality, not just inclusion
        done += 1


# ---------------------------------------------------------------------------
# witness combination
# ---------------------------------------------------------------------------


def test_combine_single_part_unchanged():
    sys = finite(["a", "b"], [1, 0])
    witness = combine_witnesses([(0b11, 2)], sys)
    assert witness.members == 0b11 and witness.k == 2


def test_combine_exponent_is_product(golden_mean):
    parts = [
        find_periodic_point_in_cylinder(golden_mean, "0"),
        find_periodic_point_in_cylinder(golden_mean, "1"),
    ]
    assert [k for _, k in parts] == [1, 2]
    witness = combine_witnesses(parts, golden_mean)
    assert witness.k == 2  # 1 * 2


def test_combine_product_two_three_gives_six():
    # one 2-cycle and one 3-cycle inside a 5-point system
    sys = finite(list("abcde"), [1, 0, 3, 4, 2])
    witness = combine_witnesses([(0b00011, 2), (0b11100, 3)], sys)
    assert witness.k == 6
    witness.validate_finite(sys)


def test_combine_product_vs_lcm():
    # a 2-cycle and a 4-cycle
    sys = finite(list("abcdef"), [1, 0, 3, 4, 5, 2])
    parts = [(0b000011, 2), (0b111100, 4)]
    product = combine_witnesses(parts, sys, mode="product")
    least = combine_witnesses(parts, sys, mode="lcm")
    assert product.k == 8 and least.k == 4
    product.validate_finite(sys)
    least.validate_finite(sys)
    assert product.k % least.k == 0


def test_combine_rejects_bad_parts():
    sys = finite(["a", "b"], [1, 0])
    with pytest.raises(WitnessError):
        combine_witnesses([(0b01, 1)], sys)  # {a} is not fixed by one step
    with pytest.raises(WitnessError):
        combine_witnesses([], sys)
