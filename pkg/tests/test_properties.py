"""Property checkers across all three system families, with witness
re-validation on everything they produce."""

import random

from hychaos.properties import (
    classify,
    has_dense_periodic_points,
    has_dense_small_periodic_sets,
    is_topologically_exact,
    is_totally_transitive,
    is_transitive,
    is_weakly_mixing,
)
from hychaos.revalidate import revalidate_verdict
from hychaos.verdicts import PROVED, REFUTED

from conftest import battery_systems, random_essential_shift, random_finite_system


ALL_CHECKERS = [
    ("transitive", is_transitive),
    ("totally-transitive", is_totally_transitive),
    ("weakly-mixing", is_weakly_mixing),
    ("dense-periodic-points", has_dense_periodic_points),
    ("dense-small-periodic-sets", has_dense_small_periodic_sets),
    ("topologically-exact", is_topologically_exact),
]


# ---------------------------------------------------------------------------
# transitivity
# ---------------------------------------------------------------------------


def test_four_cycle_transitive(cycle4):
    verdict = is_transitive(cycle4)
    assert verdict.status == PROVED
    # oracle: every singleton reaches every singleton within four steps
    for x in range(4):
        reached = set()
        cur = x
        for _ in range(4):
            cur = cycle4.map_table[cur]
            reached.add(cur)
        assert reached == set(range(4))
    revalidate_verdict(cycle4, verdict)


def test_identity_not_transitive(identity_two):
    verdict = is_transitive(identity_two)
    assert verdict.status == REFUTED
    assert verdict.counterexample == {"kind": "unreachable-pair", "from": "a", "to": "b"}


def test_golden_mean_transitive(golden_mean):
    verdict = is_transitive(golden_mean)
    assert verdict.status == PROVED
    assert verdict.method == "graph-reduction"
    revalidate_verdict(golden_mean, verdict)


# ---------------------------------------------------------------------------
# total transitivity
# ---------------------------------------------------------------------------


def test_four_cycle_not_totally_transitive(cycle4):
    verdict = is_totally_transitive(cycle4)
    assert verdict.status == REFUTED
    assert verdict.counterexample["power"] == 4  # the fourth power is the identity
    revalidate_verdict(cycle4, verdict)


def test_golden_mean_totally_transitive(golden_mean):
    # oracle: the squared transition relation is strictly positive
    adj = golden_mean.adjacency
    square = [0, 0]
    for i in range(2):
        for j in range(2):
            if (adj[i] >> j) & 1:
                square[i] |= adj[j]
    assert square == [0b11, 0b11]
    verdict = is_totally_transitive(golden_mean)
    assert verdict.status == PROVED
    revalidate_verdict(golden_mean, verdict)


def test_full_shift_totally_transitive(full2):
    assert is_totally_transitive(full2).status == PROVED


# ---------------------------------------------------------------------------
# weak mixing
# ---------------------------------------------------------------------------


def test_singleton_weakly_mixing(singleton):
    assert is_weakly_mixing(singleton).status == PROVED


def test_four_cycle_not_weakly_mixing(cycle4):
    # oracle: the product of the 4-cycle with itself splits into 4 orbits
    orbits = set()
    for start in range(16):
        orbit = []
        cur = start
        for _ in range(4):
            cur = (cycle4.map_table[cur // 4]) * 4 + cycle4.map_table[cur % 4]
            orbit.append(cur)
        orbits.add(frozenset(orbit))
    assert len(orbits) == 4
    verdict = is_weakly_mixing(cycle4)
    assert verdict.status == REFUTED
    revalidate_verdict(cycle4, verdict)


def test_golden_mean_weakly_mixing(golden_mean):
    verdict = is_weakly_mixing(golden_mean)
    assert verdict.status == PROVED
    revalidate_verdict(golden_mean, verdict)


# ---------------------------------------------------------------------------
# dense periodic points
# ---------------------------------------------------------------------------


def test_four_cycle_dense_periodic(cycle4):
    verdict = has_dense_periodic_points(cycle4)
    assert verdict.status == PROVED
    assert verdict.witness["periods"] == {"1": 4, "2": 4, "3": 4, "4": 4}


def test_collapse_refuted_at_open_one(collapse12):
    verdict = has_dense_periodic_points(collapse12)
    assert verdict.status == REFUTED
    assert verdict.counterexample == {"kind": "aperiodic-point", "point": "1"}
    revalidate_verdict(collapse12, verdict)


def test_golden_mean_dense_periodic(golden_mean):
    verdict = has_dense_periodic_points(golden_mean)
    assert verdict.status == PROVED
    assert set(verdict.witness["cells"]) == {"0", "1"}
    revalidate_verdict(golden_mean, verdict)


# ---------------------------------------------------------------------------
# dense small periodic sets
# ---------------------------------------------------------------------------


def test_four_cycle_small_periodic_sets(cycle4):
    verdict = has_dense_small_periodic_sets(cycle4)
    assert verdict.status == PROVED
    for label, entry in verdict.witness["cells"].items():
        assert entry == {"set": [label], "k": 4}
    revalidate_verdict(cycle4, verdict)


def test_collapse_small_periodic_refuted(collapse12):
    verdict = has_dense_small_periodic_sets(collapse12)
    assert verdict.status == REFUTED
    assert verdict.counterexample["cell"] == "1"


def test_golden_mean_cylinder_witness(golden_mean):
    verdict = has_dense_small_periodic_sets(golden_mean)
    assert verdict.status == PROVED
    assert verdict.witness["cells"]["1"] == {"point": "10", "k": 2}
    revalidate_verdict(golden_mean, verdict)


# ---------------------------------------------------------------------------
# topological exactness
# ---------------------------------------------------------------------------


def test_full_shift_exact_at_step_one(full2):
    verdict = is_topologically_exact(full2)
    assert verdict.status == PROVED
    assert verdict.witness["exponent"] == 1
    assert verdict.witness["cylinder_coverage"]["1"]["0"] == 1
    revalidate_verdict(full2, verdict)


def test_four_cycle_not_exact(cycle4):
    verdict = is_topologically_exact(cycle4)
    assert verdict.status == REFUTED
    assert verdict.counterexample["kind"] == "never-covers"
    revalidate_verdict(cycle4, verdict)


def test_tent_exact_at_resolution(tent):
    verdict = is_topologically_exact(tent, 12, depth=3)
    assert verdict.status == PROVED
    assert verdict.method == "bounded-search"
    assert set(verdict.witness["cells"].values()) == {3}
    revalidate_verdict(tent, verdict)


# ---------------------------------------------------------------------------
# composite classification
# ---------------------------------------------------------------------------


def test_classify_full_shift(full2):
    record = classify(full2)
    assert record["devaney-chaotic"].status == PROVED
    assert record["f-system"].status == PROVED
    assert record["hy-system"].status == PROVED


def test_classify_four_cycle(cycle4):
    record = classify(cycle4)
    assert record["devaney-chaotic"].status == PROVED
    assert record["f-system"].status == REFUTED
    assert record["hy-system"].status == REFUTED


def test_classify_collapse(collapse12):
    record = classify(collapse12)
    for name in ("devaney-chaotic", "f-system", "hy-system"):
        assert record[name].status == REFUTED


def test_tent_classification(tent):
    record = classify(tent)
    for name in ("devaney-chaotic", "f-system", "hy-system"):
        assert record[name].status == PROVED
        assert record[name].method == "bounded-search"


# ---------------------------------------------------------------------------
# cross-cutting invariants
# ---------------------------------------------------------------------------


def test_implication_chain_on_battery_and_random_systems():
    rng = random.Random(17)
    systems = [sys for _, sys in battery_systems()]
    systems += [random_finite_system(rng, rng.randint(1, 5)) for _ in range(30)]
    systems += [random_essential_shift(rng, rng.randint(1, 4)) for _ in range(20)]
    for sys in systems:
        record = classify(sys)
        if record["weakly-mixing"].status == PROVED:
            assert record["transitive"].status == PROVED
        if record["totally-transitive"].status == PROVED:
            assert record["transitive"].status == PROVED
        if record["f-system"].status == PROVED:
            assert record["hy-system"].status == PROVED


def test_shift_checker_routes_agree_on_random_matrices():
    # total transitivity, weak mixing, and exactness all reduce to the same
    # graph condition but are implemented along different routes; they must
    # coincide on arbitrary essential shifts
    rng = random.Random(23)
    for _ in range(50):
        sft = random_essential_shift(rng, rng.randint(1, 5))
        statuses = {
            is_totally_transitive(sft).status,
            is_weakly_mixing(sft).status,
            is_topologically_exact(sft).status,
        }
        assert len(statuses) == 1


def test_every_battery_verdict_revalidates():
    for _, sys in battery_systems():
        for verdict in classify(sys).values():
            revalidate_verdict(sys, verdict)


def test_random_finite_verdicts_revalidate():
    rng = random.Random(29)
    for _ in range(40):
        sys = random_finite_system(rng, rng.randint(1, 6))
        for _, checker in ALL_CHECKERS:
            revalidate_verdict(sys, checker(sys))


def test_random_shift_verdicts_revalidate():
    rng = random.Random(31)
    for _ in range(30):
        sft = random_essential_shift(rng, rng.randint(1, 5))
        for _, checker in ALL_CHECKERS:
            revalidate_verdict(sft, checker(sft))
