"""The equivalence harness on the instance battery."""

from hychaos.equivalence import (
    Budgets,
    check_devaney_equivalence,
    check_exact_devaney_equivalence,
    check_exactness_equivalence,
    check_weak_mixing_equivalence,
    combine_routes,
    feasible_levels,
)
from hychaos.revalidate import revalidate_report
from hychaos.verdicts import METHOD_GRAPH, proved, refuted, unknown

from conftest import battery_systems, shift

ALL_CHECKS = (
    check_devaney_equivalence,
    check_weak_mixing_equivalence,
    check_exactness_equivalence,
    check_exact_devaney_equivalence,
)

# every decided condition of every battery member resolves to one status
EXPECTED = {
    "singleton": "proved",
    "identity-2": "refuted",
    "cycle-4": "refuted",
    "collapse-12": "refuted",
    "full-2-shift": "proved",
    "full-3-shift": "proved",
    "golden-mean": "proved",
    "period-2": "refuted",
    "primitive-01-11": "proved",
}


def test_battery_outcomes_and_agreement():
    for name, sys in battery_systems():
        for check in ALL_CHECKS:
            report = check(sys)
            assert not report.route_conflict, (name, report.check)
            assert report.agreement == "agree", (name, report.check)
            for cond_name, verdict in report.conditions:
                assert verdict.decided, (name, report.check, cond_name)
                assert verdict.status == EXPECTED[name], (name, report.check, cond_name)


def test_battery_reports_revalidate():
    for name, sys in battery_systems():
        for check in ALL_CHECKS:
            revalidate_report(sys, check(sys))


def test_hypothesis_notes():
    systems = dict(battery_systems())
    report = check_devaney_equivalence(systems["period-2"])
    assert "unmet" in report.hypothesis_note  # two-point shift space
    report = check_devaney_equivalence(systems["golden-mean"])
    assert "hypothesis met" in report.hypothesis_note
    report = check_devaney_equivalence(systems["cycle-4"])
    assert "finite" in report.hypothesis_note


def test_devaney_report_shapes(tent):
    report = check_devaney_equivalence(tent)
    names = [name for name, _ in report.conditions]
    assert names == ["devaney(hyperspace)", "hy-system(hyperspace)", "hy-system(base)"]
    assert report.agreement == "agree"
    data = report.to_dict()
    assert {c["name"] for c in data["conditions"]} == set(names)


def test_tent_corollary_proved_at_resolution(tent):
    report = check_exact_devaney_equivalence(tent)
    assert report.agreement == "agree"
    for _, verdict in report.conditions:
        assert verdict.status == "proved"
        assert verdict.method == "bounded-search"
    revalidate_report(tent, report)


def test_shift_conditions_record_both_routes():
    gm = dict(battery_systems())["golden-mean"]
    report = check_weak_mixing_equivalence(gm)
    trans_k = report.condition("transitive(hyperspace)")
    routes = trans_k.witness["routes"]
    assert "reduction(base-weak-mixing)" in routes
    assert any(name.startswith("bounded-vietoris") for name in routes)
    scopes = trans_k.witness["scopes"]
    assert scopes["reduction(base-weak-mixing)"] == "full"


def test_feasible_levels_respect_enum_cap():
    gm = shift([[1, 1], [1, 0]])
    full3 = shift([[1, 1, 1]] * 3)
    assert feasible_levels(gm, Budgets()) == [1, 2, 3]
    assert feasible_levels(full3, Budgets()) == [1]  # 9 words at level 2 exceed 6
    assert feasible_levels(full3, Budgets(enum_cap=9)) == [1, 2]


def test_combine_routes_semantics():
    full_proof = proved(METHOD_GRAPH, {"kind": "singleton-space"})
    bounded_proof = proved(METHOD_GRAPH, {"kind": "singleton-space"})
    refutation = refuted(METHOD_GRAPH, {"kind": "unreachable-pair", "from": "a", "to": "b"})
    undecided = unknown(METHOD_GRAPH, "budget")

    verdict, conflict = combine_routes({"a": (full_proof, True), "b": (bounded_proof, False)})
    assert verdict.status == "proved" and not conflict

    verdict, conflict = combine_routes({"a": (bounded_proof, False)})
    assert verdict.status == "unknown" and not conflict  # bounded support alone

    verdict, conflict = combine_routes({"a": (refutation, True), "b": (undecided, True)})
    assert verdict.status == "refuted" and not conflict

    verdict, conflict = combine_routes({"a": (full_proof, True), "b": (refutation, True)})
    assert verdict.status == "unknown" and conflict

    verdict, conflict = combine_routes({"a": (bounded_proof, False), "b": (refutation, True)})
    assert verdict.status == "refuted" and not conflict


def test_pipeline_soundness_for_every_proved_hy_shift():
    # wherever the base HY property is proved on a shift, the constructed
    # periodic hyperspace points re-validate at every feasible level
    from hychaos.hyperspace import vietoris_periodic_dense_bounded
    from hychaos.properties import has_dense_small_periodic_sets, is_totally_transitive
    from hychaos.revalidate import revalidate_verdict

    for name, sys in battery_systems():
        if not hasattr(sys, "alphabet"):
            continue
        hy_proved = (
            is_totally_transitive(sys).status == "proved"
            and has_dense_small_periodic_sets(sys).status == "proved"
        )
        if not hy_proved:
            continue
        for level in feasible_levels(sys, Budgets()):
            verdict = vietoris_periodic_dense_bounded(sys, level)
            assert verdict.status == "proved", (name, level)
            revalidate_verdict(sys, verdict)


def test_powerset_cap_degrades_to_unknown():
    systems = dict(battery_systems())
    report = check_devaney_equivalence(systems["cycle-4"], Budgets(powerset_cap=2))
    hyper_conditions = [v for n, v in report.conditions if "(hyperspace)" in n]
    assert all(v.status == "unknown" for v in hyper_conditions)
    base = report.condition("hy-system(base)")
    assert base.status == "refuted"
    assert report.agreement == "inconclusive"  # only one decided condition
