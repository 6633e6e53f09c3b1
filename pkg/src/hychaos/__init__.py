"""hychaos: witness-carrying chaos checkers for dynamical systems and their
hyperspaces, with exact rational arithmetic throughout."""

from .equivalence import (
    Budgets,
    EquivalenceReport,
    check_devaney_equivalence,
    check_exact_devaney_equivalence,
    check_exactness_equivalence,
    check_weak_mixing_equivalence,
)
from .hyperspace import (
    CylinderProfile,
    HyperSystem,
    cylinder_reach,
    induced_image,
    periodic_set_for_profile,
    powerset_hyperspace,
    vietoris_periodic_dense_bounded,
    vietoris_transitive_bounded,
)
from .metric import (
    ClosedSet,
    FinitePointSpace,
    VietorisOpen,
    check_metric_axioms,
    hausdorff_distance,
    vietoris_contains,
)
from .oracle import brute_force_oracle
from .properties import (
    PeriodicPoints,
    classify,
    has_dense_periodic_points,
    has_dense_small_periodic_sets,
    is_topologically_exact,
    is_totally_transitive,
    is_transitive,
    is_weakly_mixing,
)
from .revalidate import revalidate_report, revalidate_verdict
from .systems import (
    FiniteSystem,
    Interval,
    IntervalUnion,
    PLSystem,
    ShiftSystem,
    allowed_words,
    make_finite_system,
    make_pl_system,
    make_shift_system,
    pl_image_of_interval,
    tent_map,
)
from .verdicts import PROVED, REFUTED, UNKNOWN, Verdict
from .witnesses import (
    FamilyWitness,
    PeriodicSetWitness,
    SmallPeriodicWitness,
    combine_witnesses,
    find_periodic_point_in_cylinder,
    periodic_kernel,
    union_closure,
)

__version__ = "0.1.0"
