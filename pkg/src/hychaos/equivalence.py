"""Equivalence harness: does chaos on the hyperspace line up with the base?

Four instance checks, each producing an :class:`EquivalenceReport` whose
conditions carry their own verdicts and methods:

* ``devaney-equivalence``       -- hyperspace Devaney chaos vs hyperspace
  HY-system vs base HY-system (an HY-system is totally transitive with dense
  small periodic sets).
* ``weak-mixing-equivalence``   -- hyperspace weak mixing vs hyperspace
  transitivity vs base weak mixing.
* ``exactness-equivalence``     -- hyperspace exactness vs base exactness.
* ``exact-devaney-equivalence`` -- hyperspace exact Devaney chaos vs the base
  being a topologically exact HY-system.

Finite systems are decided exactly on the materialised powerset hyperspace.
For shifts the hyperspace conditions combine a reduction route (through the
base-level characterisation) with an independent bounded cylinder-level
verification; both routes are recorded so that the bounded route never leans
on the equivalence it is meant to test.  Piecewise-linear systems certify the
base conditions at a dyadic resolution and transport them to the hyperspace
side through the recorded reductions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hyperspace import (
    BudgetExceededError,
    powerset_hyperspace,
    vietoris_periodic_dense_bounded,
    vietoris_transitive_bounded,
    vietoris_weak_mixing_bounded,
)
from .properties import (
    has_dense_periodic_points,
    has_dense_small_periodic_sets,
    is_topologically_exact,
    is_totally_transitive,
    is_transitive,
    is_weakly_mixing,
)
from .systems import FiniteSystem, PLSystem, ShiftSystem, SystemBuildError, allowed_words
from .verdicts import (
    METHOD_BOUNDED,
    METHOD_EXHAUSTIVE,
    METHOD_GRAPH,
    PROVED,
    REFUTED,
    UNKNOWN,
    Verdict,
    conjoin,
    proved,
    reduced_verdict,
    refuted,
    unknown,
)
from .witnesses import (  # re-exported: the constructive witness pipeline
    FamilyWitness,
    PeriodicSetWitness,
    SmallPeriodicWitness,
    combine_witnesses,
    find_periodic_point_in_cylinder,
    periodic_kernel,
    union_closure,
)

__all__ = [
    "Budgets",
    "EquivalenceReport",
    "check_devaney_equivalence",
    "check_weak_mixing_equivalence",
    "check_exactness_equivalence",
    "check_exact_devaney_equivalence",
    "EQUIVALENCE_CHECKS",
    "FamilyWitness",
    "PeriodicSetWitness",
    "SmallPeriodicWitness",
    "combine_witnesses",
    "find_periodic_point_in_cylinder",
    "periodic_kernel",
    "union_closure",
]


@dataclass(frozen=True)
class Budgets:
    """Search budgets shared by the harness checks."""

    level: int = 3  # highest cylinder level for bounded hyperspace checks
    horizon: int | None = None  # step budget override for bounded searches
    k_max: int | None = None  # invariant-set exponent bound
    powerset_cap: int = 16  # largest finite system whose hyperspace is built
    power_bound: int = 3  # powers checked by bounded total transitivity
    enum_cap: int = 6  # max cylinder count whose subsets are enumerated
    pl_depth: int = 3  # dyadic resolution for interval maps
    pl_horizon: int = 12
    pl_k_max: int = 8


@dataclass(frozen=True)
class EquivalenceReport:
    check: str
    conditions: tuple[tuple[str, Verdict], ...]
    agreement: str  # agree | disagree | inconclusive
    hypothesis_note: str
    route_conflict: bool = False

    def condition(self, name: str) -> Verdict:
        for label, verdict in self.conditions:
            if label == name:
                return verdict
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "agreement": self.agreement,
            "hypothesis": self.hypothesis_note,
            "route_conflict": self.route_conflict,
            "conditions": [
                {"name": name, "verdict": verdict.to_dict()}
                for name, verdict in self.conditions
            ],
        }


def _agreement(conditions, route_conflict: bool) -> str:
    decided = [v.status for _, v in conditions if v.decided]
    if route_conflict or len(set(decided)) > 1:
        return "disagree"
    if len(decided) >= 2:
        return "agree"
    return "inconclusive"


def _make_report(check, conditions, note, conflict=False) -> EquivalenceReport:
    return EquivalenceReport(
        check=check,
        conditions=tuple(conditions),
        agreement=_agreement(conditions, conflict),
        hypothesis_note=note,
        route_conflict=conflict,
    )


def _hypothesis_note(sys, budgets: Budgets) -> str:
    if isinstance(sys, FiniteSystem):
        return (
            f"base space is finite ({sys.size} points); the infinite-space "
            "hypothesis is unmet, agreement is an empirical expectation"
        )
    if isinstance(sys, ShiftSystem):
        if sys.space_is_infinite():
            return "base shift space is infinite; hypothesis met"
        return (
            "base shift space is finite (every symbol has a forced "
            "continuation); the infinite-space hypothesis is unmet, "
            "agreement is an empirical expectation"
        )
    return (
        "base space is the unit interval (infinite); hypothesis met; "
        f"verdicts are certified at dyadic depth {budgets.pl_depth}"
    )


# ---------------------------------------------------------------------------
# route combination
# ---------------------------------------------------------------------------


def combine_routes(routes: dict[str, tuple[Verdict, bool]]) -> tuple[Verdict, bool]:
    """Merge independently computed routes for one condition.

    Each route is (verdict, total): a ``total`` route decides the condition
    outright, a bounded route's Proved only supports it (its Refuted is still
    a genuine counterexample).  Returns the combined verdict and a conflict
    flag; a total proof against any refutation is a conflict and leaves the
    combination Unknown so the report surfaces the inconsistency.
    """
    payload = {
        "kind": "multi-route",
        "routes": {name: v.to_dict() for name, (v, _) in routes.items()},
        "scopes": {name: ("full" if total else "bounded") for name, (_, total) in routes.items()},
    }
    has_refuted = any(v.status == REFUTED for v, _ in routes.values())
    has_total_proof = any(v.status == PROVED and total for v, total in routes.values())
    if has_refuted and has_total_proof:
        return (
            unknown(METHOD_GRAPH, "ROUTE CONFLICT: a total proof coexists with a refutation"),
            True,
        )
    if has_refuted:
        method = next(v.method for v, _ in routes.values() if v.status == REFUTED)
        return refuted(method, payload), False
    if has_total_proof:
        method = next(
            v.method for v, total in routes.values() if v.status == PROVED and total
        )
        return proved(method, payload), False
    notes = "; ".join(
        f"{name}: {v.budget_note if v.status == UNKNOWN else 'proved at bounded scope'}"
        for name, (v, _) in routes.items()
    )
    return unknown(METHOD_BOUNDED, f"no total route decided: {notes}"), False


def _try_bounded(fn, *args, **kwargs) -> Verdict:
    try:
        return fn(*args, **kwargs)
    except BudgetExceededError as exc:
        return unknown(METHOD_BOUNDED, str(exc))


def feasible_levels(sft: ShiftSystem, budgets: Budgets) -> list[int]:
    """Cylinder levels whose word count stays within the enumeration cap."""
    out = []
    for level in range(1, budgets.level + 1):
        if len(allowed_words(sft, level)) <= budgets.enum_cap:
            out.append(level)
    return out


# ---------------------------------------------------------------------------
# condition builders
# ---------------------------------------------------------------------------


def _finite_hyper(sys: FiniteSystem, budgets: Budgets):
    try:
        hyper = powerset_hyperspace(sys, cap=budgets.powerset_cap)
        return hyper.as_finite_system(), None
    except BudgetExceededError as exc:
        return None, str(exc)


def _base_hy(sys, budgets: Budgets, method: str) -> Verdict:
    return conjoin(
        {
            "totally-transitive": is_totally_transitive(
                sys, budgets.power_bound, depth=budgets.pl_depth, horizon=budgets.pl_horizon
            )
            if isinstance(sys, PLSystem)
            else is_totally_transitive(sys),
            "dense-small-periodic-sets": has_dense_small_periodic_sets(
                sys, budgets.pl_k_max, depth=budgets.pl_depth
            )
            if isinstance(sys, PLSystem)
            else has_dense_small_periodic_sets(sys, budgets.k_max),
        },
        method,
    )


def _shift_hyper_transitive(sft: ShiftSystem, budgets: Budgets, wm_x: Verdict):
    routes: dict[str, tuple[Verdict, bool]] = {
        "reduction(base-weak-mixing)": (
            reduced_verdict(wm_x, "hyperspace-transitive-iff-base-weakly-mixing"),
            True,
        )
    }
    for level in feasible_levels(sft, budgets):
        routes[f"bounded-vietoris(level={level})"] = (
            _try_bounded(vietoris_transitive_bounded, sft, level, budgets.horizon),
            False,
        )
    return combine_routes(routes)


def _shift_hyper_total_transitive(sft: ShiftSystem, budgets: Budgets, wm_x: Verdict):
    routes: dict[str, tuple[Verdict, bool]] = {
        "reduction(base-weak-mixing)": (
            reduced_verdict(wm_x, "hyperspace-total-transitivity-iff-base-weak-mixing"),
            True,
        )
    }
    for level in feasible_levels(sft, budgets):
        routes[f"bounded-vietoris-powers(level={level})"] = (
            _bounded_power_transitivity(sft, level, budgets),
            False,
        )
    return combine_routes(routes)


def _bounded_power_transitivity(sft: ShiftSystem, level: int, budgets: Budgets) -> Verdict:
    tables = {}
    for power in range(1, budgets.power_bound + 1):
        inner = _try_bounded(
            vietoris_transitive_bounded, sft, level, budgets.horizon, power
        )
        if inner.status == REFUTED:
            return refuted(
                METHOD_BOUNDED,
                {
                    "kind": "power-transitivity-failure",
                    "power": power,
                    "counterexample": inner.counterexample,
                },
            )
        if inner.status == UNKNOWN:
            return unknown(METHOD_BOUNDED, f"power {power}: {inner.budget_note}")
        tables[str(power)] = inner.witness
    return proved(
        METHOD_BOUNDED,
        {
            "kind": "power-pair-tables",
            "level": level,
            "powers": budgets.power_bound,
            "tables": tables,
        },
    )


def _shift_hyper_dense_periodic(sft: ShiftSystem, budgets: Budgets):
    levels = feasible_levels(sft, budgets)
    level = max(levels) if levels else 1
    verdict = _try_bounded(vietoris_periodic_dense_bounded, sft, level)
    return combine_routes(
        {f"cylinder-construction(level={level})": (verdict, verdict.decided)}
    )


# ---------------------------------------------------------------------------
# the four checks
# ---------------------------------------------------------------------------


def check_devaney_equivalence(sys, budgets: Budgets = Budgets()) -> EquivalenceReport:
    """Hyperspace Devaney chaos vs hyperspace HY-system vs base HY-system."""
    note = _hypothesis_note(sys, budgets)
    conflict = False

    if isinstance(sys, FiniteSystem):
        hk, err = _finite_hyper(sys, budgets)
        if hk is None:
            cond1 = unknown(METHOD_EXHAUSTIVE, err)
            cond2 = unknown(METHOD_EXHAUSTIVE, err)
        else:
            cond1 = conjoin(
                {
                    "transitive": is_transitive(hk),
                    "dense-periodic-points": has_dense_periodic_points(hk),
                },
                METHOD_EXHAUSTIVE,
            )
            cond2 = _base_hy(hk, budgets, METHOD_EXHAUSTIVE)
        cond3 = _base_hy(sys, budgets, METHOD_EXHAUSTIVE)
    elif isinstance(sys, ShiftSystem):
        wm_x = is_weakly_mixing(sys)
        trans_k, c1 = _shift_hyper_transitive(sys, budgets, wm_x)
        dpp_k, c2 = _shift_hyper_dense_periodic(sys, budgets)
        cond1 = conjoin(
            {"transitive": trans_k, "dense-periodic-points": dpp_k}, METHOD_GRAPH
        )
        tt_k, c3 = _shift_hyper_total_transitive(sys, budgets, wm_x)
        dsps_k = reduced_verdict(dpp_k, "cylinder-periodic-recurrence")
        cond2 = conjoin(
            {"totally-transitive": tt_k, "dense-small-periodic-sets": dsps_k},
            METHOD_GRAPH,
        )
        cond3 = _base_hy(sys, budgets, METHOD_GRAPH)
        conflict = c1 or c2 or c3
    elif isinstance(sys, PLSystem):
        cond3 = _base_hy(sys, budgets, METHOD_BOUNDED)
        cond1 = reduced_verdict(
            cond3, "base-hy-iff-hyperspace-devaney", METHOD_BOUNDED
        )
        cond2 = reduced_verdict(cond3, "base-hy-iff-hyperspace-hy", METHOD_BOUNDED)
    else:
        raise SystemBuildError(f"unsupported system {type(sys).__name__}")

    return _make_report(
        "devaney-equivalence",
        [
            ("devaney(hyperspace)", cond1),
            ("hy-system(hyperspace)", cond2),
            ("hy-system(base)", cond3),
        ],
        note,
        conflict,
    )


def check_weak_mixing_equivalence(sys, budgets: Budgets = Budgets()) -> EquivalenceReport:
    """Hyperspace weak mixing vs hyperspace transitivity vs base weak mixing."""
    note = _hypothesis_note(sys, budgets)
    conflict = False

    if isinstance(sys, FiniteSystem):
        hk, err = _finite_hyper(sys, budgets)
        if hk is None:
            wm_k = unknown(METHOD_EXHAUSTIVE, err)
            trans_k = unknown(METHOD_EXHAUSTIVE, err)
        else:
            wm_k = is_weakly_mixing(hk)
            trans_k = is_transitive(hk)
        wm_x = is_weakly_mixing(sys)
    elif isinstance(sys, ShiftSystem):
        wm_x = is_weakly_mixing(sys)
        trans_k, c1 = _shift_hyper_transitive(sys, budgets, wm_x)
        wm_routes: dict[str, tuple[Verdict, bool]] = {
            "reduction(base-weak-mixing)": (
                reduced_verdict(wm_x, "hyperspace-weak-mixing-iff-base-weak-mixing"),
                True,
            )
        }
        for level in feasible_levels(sys, budgets):
            wm_routes[f"bounded-vietoris-product(level={level})"] = (
                _try_bounded(vietoris_weak_mixing_bounded, sys, level, budgets.horizon),
                False,
            )
        wm_k, c2 = combine_routes(wm_routes)
        conflict = c1 or c2
    elif isinstance(sys, PLSystem):
        wm_x = is_weakly_mixing(sys, depth=budgets.pl_depth, horizon=budgets.pl_horizon)
        trans_k = reduced_verdict(
            wm_x, "hyperspace-transitive-iff-base-weakly-mixing", METHOD_BOUNDED
        )
        wm_k = reduced_verdict(
            wm_x, "hyperspace-weak-mixing-iff-base-weak-mixing", METHOD_BOUNDED
        )
    else:
        raise SystemBuildError(f"unsupported system {type(sys).__name__}")

    return _make_report(
        "weak-mixing-equivalence",
        [
            ("weakly-mixing(hyperspace)", wm_k),
            ("transitive(hyperspace)", trans_k),
            ("weakly-mixing(base)", wm_x),
        ],
        note,
        conflict,
    )


def check_exactness_equivalence(sys, budgets: Budgets = Budgets()) -> EquivalenceReport:
    """Hyperspace exactness vs base exactness."""
    note = _hypothesis_note(sys, budgets)

    if isinstance(sys, FiniteSystem):
        hk, err = _finite_hyper(sys, budgets)
        exact_k = (
            is_topologically_exact(hk) if hk is not None else unknown(METHOD_EXHAUSTIVE, err)
        )
        exact_x = is_topologically_exact(sys)
    elif isinstance(sys, ShiftSystem):
        exact_x = is_topologically_exact(sys)
        exact_k = reduced_verdict(exact_x, "hyperspace-exact-iff-base-exact")
    elif isinstance(sys, PLSystem):
        exact_x = is_topologically_exact(
            sys, budgets.pl_horizon, depth=budgets.pl_depth
        )
        exact_k = reduced_verdict(
            exact_x, "hyperspace-exact-iff-base-exact", METHOD_BOUNDED
        )
    else:
        raise SystemBuildError(f"unsupported system {type(sys).__name__}")

    return _make_report(
        "exactness-equivalence",
        [
            ("topologically-exact(hyperspace)", exact_k),
            ("topologically-exact(base)", exact_x),
        ],
        note,
    )


def check_exact_devaney_equivalence(sys, budgets: Budgets = Budgets()) -> EquivalenceReport:
    """Hyperspace exact Devaney chaos vs the base being a topologically exact
    HY-system."""
    note = _hypothesis_note(sys, budgets)
    conflict = False

    if isinstance(sys, FiniteSystem):
        hk, err = _finite_hyper(sys, budgets)
        if hk is None:
            left = unknown(METHOD_EXHAUSTIVE, err)
        else:
            left = conjoin(
                {
                    "topologically-exact": is_topologically_exact(hk),
                    "dense-periodic-points": has_dense_periodic_points(hk),
                },
                METHOD_EXHAUSTIVE,
            )
        right = conjoin(
            {
                "topologically-exact": is_topologically_exact(sys),
                "hy-system": _base_hy(sys, budgets, METHOD_EXHAUSTIVE),
            },
            METHOD_EXHAUSTIVE,
        )
    elif isinstance(sys, ShiftSystem):
        exact_x = is_topologically_exact(sys)
        dpp_k, conflict = _shift_hyper_dense_periodic(sys, budgets)
        left = conjoin(
            {
                "topologically-exact": reduced_verdict(
                    exact_x, "hyperspace-exact-iff-base-exact"
                ),
                "dense-periodic-points": dpp_k,
            },
            METHOD_GRAPH,
        )
        right = conjoin(
            {
                "topologically-exact": exact_x,
                "hy-system": _base_hy(sys, budgets, METHOD_GRAPH),
            },
            METHOD_GRAPH,
        )
    elif isinstance(sys, PLSystem):
        exact_x = is_topologically_exact(sys, budgets.pl_horizon, depth=budgets.pl_depth)
        hy_x = _base_hy(sys, budgets, METHOD_BOUNDED)
        left = conjoin(
            {
                "topologically-exact": reduced_verdict(
                    exact_x, "hyperspace-exact-iff-base-exact", METHOD_BOUNDED
                ),
                "dense-periodic-points": reduced_verdict(
                    hy_x, "base-hy-gives-hyperspace-dense-periodic", METHOD_BOUNDED
                ),
            },
            METHOD_BOUNDED,
        )
        right = conjoin(
            {"topologically-exact": exact_x, "hy-system": hy_x}, METHOD_BOUNDED
        )
    else:
        raise SystemBuildError(f"unsupported system {type(sys).__name__}")

    return _make_report(
        "exact-devaney-equivalence",
        [
            ("exact-devaney(hyperspace)", left),
            ("exact-hy-system(base)", right),
        ],
        note,
        conflict,
    )


EQUIVALENCE_CHECKS = {
    "devaney-equivalence": check_devaney_equivalence,
    "weak-mixing-equivalence": check_weak_mixing_equivalence,
    "exactness-equivalence": check_exactness_equivalence,
    "exact-devaney-equivalence": check_exact_devaney_equivalence,
}
