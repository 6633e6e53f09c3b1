"""Hyperspace construction and cylinder-level bounded verification."""

import random

import pytest

from hychaos.hyperspace import (
    BudgetExceededError,
    CylinderProfile,
    cylinder_reach,
    induced_image,
    periodic_set_for_profile,
    powerset_hyperspace,
    vietoris_periodic_dense_bounded,
    vietoris_transitive_bounded,
    vietoris_weak_mixing_bounded,
)
from hychaos.metric import ClosedSet, check_metric_axioms, hausdorff_distance
from hychaos.revalidate import revalidate_verdict
from hychaos.systems import SystemBuildError, make_shift_system

from conftest import finite, random_essential_shift, random_finite_system, shift


# ---------------------------------------------------------------------------
# the literal powerset hyperspace
# ---------------------------------------------------------------------------


def test_swap_hyperspace_three_states():
    sys = finite(["a", "b"], [1, 0])
    hyper = powerset_hyperspace(sys)
    assert hyper.states == (1, 2, 3)
    assert hyper.induced_of(0b01) == 0b10
    assert hyper.induced_of(0b10) == 0b01
    assert hyper.induced_of(0b11) == 0b11


def test_singleton_hyperspace_fixed_state():
    hyper = powerset_hyperspace(finite(["p"], [0]))
    assert hyper.states == (1,)
    assert hyper.induced_of(1) == 1


def test_three_cycle_hyperspace_orbits():
    sys = finite(["1", "2", "3"], [1, 2, 0])
    hyper = powerset_hyperspace(sys)
    assert len(hyper.states) == 7
    singles = [0b001, 0b010, 0b100]
    for mask in singles:
        assert hyper.induced_of(mask) in singles
    # singletons and pairs each form a 3-cycle, the full set is fixed
    seen = {0b001}
    cur = 0b001
    for _ in range(3):
        cur = hyper.induced_of(cur)
        seen.add(cur)
    assert seen == set(singles) | {0b001}
    pair = 0b011
    orbit = {pair}
    cur = pair
    for _ in range(3):
        cur = hyper.induced_of(cur)
        orbit.add(cur)
    assert orbit == {0b011, 0b110, 0b101}
    assert hyper.induced_of(0b111) == 0b111


def test_powerset_cap():
    sys = random_finite_system(random.Random(0), 5)
    with pytest.raises(BudgetExceededError):
        powerset_hyperspace(sys, cap=4)


def test_state_count_metric_and_iterates_agree():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 5)
        sys = random_finite_system(rng, n)
        hyper = powerset_hyperspace(sys)
        assert len(hyper.states) == 2**n - 1
        for mask in hyper.states:
            assert hyper.induced_of(mask) == induced_image(ClosedSet(sys.space, mask), sys).mask
        for a in hyper.states:
            for b in hyper.states:
                expected = hausdorff_distance(
                    ClosedSet(sys.space, a), ClosedSet(sys.space, b), sys.space
                )
                assert hyper.distance(a, b) == expected
        # iterating the induced map matches repeated pointwise images
        for mask in hyper.states:
            cur = mask
            direct = ClosedSet(sys.space, mask)
            for _ in range(8):
                cur = hyper.induced_of(cur)
                direct = induced_image(direct, sys)
                assert cur == direct.mask


def test_hyperspace_is_a_valid_finite_system():
    sys = finite(["a", "b", "c"], [1, 2, 0])
    hk = powerset_hyperspace(sys).as_finite_system()
    assert check_metric_axioms(hk.space).ok
    assert len(hk.map_table) == 7


def test_induced_image_examples():
    sys = finite(["1", "2", "3"], [1, 2, 0])
    space = sys.space
    single = induced_image(ClosedSet.from_labels(space, ["1"]), sys)
    assert single.members() == ("2",)
    everything = induced_image(ClosedSet.from_labels(space, ["1", "2", "3"]), sys)
    assert everything.members() == ("1", "2", "3")
    pair = induced_image(ClosedSet.from_labels(space, ["1", "3"]), sys)
    assert set(pair.members()) == {"1", "2"}


def test_induced_image_union_homomorphism_and_equivariance():
    rng = random.Random(9)
    for _ in range(20):
        sys = random_finite_system(rng, rng.randint(2, 5))
        space = sys.space
        full = (1 << sys.size) - 1
        a = rng.randint(1, full)
        b = rng.randint(1, full)
        img_union = induced_image(ClosedSet(space, a | b), sys).mask
        img_a = induced_image(ClosedSet(space, a), sys).mask
        img_b = induced_image(ClosedSet(space, b), sys).mask
        assert img_union == img_a | img_b
        if a | b != b:
            assert induced_image(ClosedSet(space, a), sys).mask <= full
        for x in range(sys.size):
            assert induced_image(ClosedSet(space, 1 << x), sys).mask == 1 << sys.apply(x)


# ---------------------------------------------------------------------------
# cylinder reachability
# ---------------------------------------------------------------------------


def test_cylinder_reach_full_shift_always_true(full2):
    for u in ("0", "1"):
        for v in ("0", "1"):
            for n in (1, 2, 3):
                assert cylinder_reach(full2, u, v, n)


def test_cylinder_reach_golden_mean(golden_mean):
    assert not cylinder_reach(golden_mean, "1", "1", 1)
    assert cylinder_reach(golden_mean, "1", "1", 2)  # via 101


def test_cylinder_reach_validates_inputs(golden_mean):
    with pytest.raises(SystemBuildError):
        cylinder_reach(golden_mean, "1", "10", 1)
    with pytest.raises(SystemBuildError):
        cylinder_reach(golden_mean, "11", "00", 1)


def test_cylinder_reach_monotone_in_transitions():
    rng = random.Random(13)
    for _ in range(20):
        base = random_essential_shift(rng, 3)
        rows = [list(row) for row in base.transition]
        zeros = [(i, j) for i in range(3) for j in range(3) if not rows[i][j]]
        if not zeros:
            continue
        i, j = rng.choice(zeros)
        rows[i][j] = 1
        richer = make_shift_system(base.alphabet, rows)
        for u in base.alphabet:
            for v in base.alphabet:
                for n in (1, 2, 3):
                    if cylinder_reach(base, u, v, n):
                        assert cylinder_reach(richer, u, v, n)


# ---------------------------------------------------------------------------
# bounded Vietoris verification
# ---------------------------------------------------------------------------


def test_full_shift_transitive_all_pairs_at_one_step(full2):
    verdict = vietoris_transitive_bounded(full2, 1, horizon=2)
    assert verdict.status == "proved"
    pairs = verdict.witness["pairs"]
    assert len(pairs) == 9
    assert all(n == 1 for n in pairs.values())
    # oracle: every entry certified by cylinder_reach clause evaluation
    for key in pairs:
        left, right = key.split("|")
        sources, targets = left.split("+"), right.split("+")
        n = pairs[key]
        assert all(any(cylinder_reach(full2, u, v, n) for v in targets) for u in sources)
        assert all(any(cylinder_reach(full2, u, v, n) for u in sources) for v in targets)
    revalidate_verdict(full2, verdict)


def test_period_two_shift_counting_obstruction(period2):
    verdict = vietoris_transitive_bounded(period2, 1)
    assert verdict.status == "refuted"
    ce = verdict.counterexample
    assert ce["kind"] == "impossible-cylinder-pair"
    assert ce["source"] == ["0"]
    assert ce["target"] == ["0", "1"]
    revalidate_verdict(period2, verdict)


def test_self_loop_pair_witnessed_at_one(golden_mean):
    verdict = vietoris_transitive_bounded(golden_mean, 1)
    assert verdict.status == "proved"
    assert verdict.witness["pairs"]["0|0"] == 1


def test_transitive_bounded_with_step(golden_mean):
    verdict = vietoris_transitive_bounded(golden_mean, 1, step=2)
    assert verdict.status == "proved"
    assert all(n % 2 == 0 for n in verdict.witness["pairs"].values())
    revalidate_verdict(golden_mean, verdict)


def test_weak_mixing_bounded(full2, golden_mean, period2):
    assert vietoris_weak_mixing_bounded(full2, 1).status == "proved"
    gm = vietoris_weak_mixing_bounded(golden_mean, 1)
    assert gm.status == "proved"
    revalidate_verdict(golden_mean, gm)
    assert vietoris_weak_mixing_bounded(period2, 1).status == "refuted"


def test_periodic_dense_full_shift(full2):
    verdict = vietoris_periodic_dense_bounded(full2, 1)
    assert verdict.status == "proved"
    opens = verdict.witness["opens"]
    assert opens["0+1"]["points"] == {"0": "0", "1": "1"}
    assert opens["0+1"]["k"] == 1
    revalidate_verdict(full2, verdict)


def test_periodic_dense_golden_mean(golden_mean):
    verdict = vietoris_periodic_dense_bounded(golden_mean, 1)
    assert verdict.status == "proved"
    assert verdict.witness["opens"]["1"] == {"points": {"1": "10"}, "k": 2}


def test_periodic_dense_single_symbol():
    sft = shift([[1]])
    verdict = vietoris_periodic_dense_bounded(sft, 2)
    assert verdict.status == "proved"
    assert verdict.witness["opens"]["00"]["points"] == {"00": "00"}


def test_periodic_dense_refuted_on_reducible_shift():
    sft = shift([[1, 1], [0, 1]])  # 0 -> 1 is a one-way door
    verdict = vietoris_periodic_dense_bounded(sft, 2)
    assert verdict.status == "refuted"
    assert verdict.counterexample["kind"] == "cylinder-without-periodic"
    revalidate_verdict(sft, verdict)


def test_periodic_set_for_profile(golden_mean):
    witness = periodic_set_for_profile(golden_mean, CylinderProfile(2, ("01", "10")))
    assert witness.k == 4  # both parts have claimed period 2
    witness.validate_shift(golden_mean)
    witness.validate_in_cylinders(golden_mean, ("01", "10"))


def test_profile_validation(golden_mean):
    with pytest.raises(SystemBuildError):
        CylinderProfile(2, ("11",)).validate(golden_mean)
    with pytest.raises(SystemBuildError):
        CylinderProfile(0, ("0",))
