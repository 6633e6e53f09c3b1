"""Witness-carrying checkers: transitivity, total transitivity, weak mixing,
dense periodic points, dense small periodic sets, topological exactness, and
the composite classifications built from them.

Dispatch is by system family:

* finite systems are decided by exhaustion over the discrete topology
  (singleton opens suffice; the brute-force oracle quantifying over all
  subsets confirms the equivalence),
* shifts are decided through the transition graph,
* piecewise-linear maps are certified at a dyadic resolution and are never
  refuted by a finite cover, only Proved-at-resolution or Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    all_positive,
    bool_mat_power,
    cyclic_classes,
    exact_reach,
    forward_closure,
    graph_period,
    is_strongly_connected,
    scc_closure_failure,
    shortest_path,
    step_mask,
)
from .metric import iter_bits
from .systems import (
    FiniteSystem,
    Interval,
    IntervalUnion,
    PLSystem,
    ShiftSystem,
    SystemBuildError,
    UNIT_UNION,
    allowed_words,
    dyadic_cells,
    pl_image_of_union,
    pl_iterate,
    product_map,
)
from .verdicts import (
    METHOD_BOUNDED,
    METHOD_EXHAUSTIVE,
    METHOD_GRAPH,
    Verdict,
    conjoin,
    proved,
    refuted,
    unknown,
)
from .witnesses import find_periodic_point_in_cylinder

PROPERTIES = (
    "transitive",
    "totally-transitive",
    "weakly-mixing",
    "dense-periodic-points",
    "dense-small-periodic-sets",
    "topologically-exact",
)

COMPOSITES = ("devaney-chaotic", "f-system", "hy-system")


class ConsistencyError(RuntimeError):
    """Two independent decision routes disagreed; this is an implementation bug."""


@dataclass(frozen=True)
class PeriodicPoints:
    """The periodic points of a finite system, each with its least period."""

    periods: tuple[tuple[str, int], ...]

    @classmethod
    def scan(cls, sys: FiniteSystem) -> "PeriodicPoints":
        found = []
        for x in range(sys.size):
            p = _least_period(sys.map_table, x)
            if p is not None:
                found.append((sys.space.points[x], p))
        return cls(tuple(found))

    def covers(self, sys: FiniteSystem) -> bool:
        return len(self.periods) == sys.size

    def validate(self, sys: FiniteSystem) -> None:
        for label, period in self.periods:
            x = sys.space.index(label)
            if period < 1 or sys.iterate_point(x, period) != x:
                raise ValueError(f"{label} is not fixed by its stated period")
            if any(sys.iterate_point(x, j) == x for j in range(1, period)):
                raise ValueError(f"stated period of {label} is not least")

    def as_payload(self) -> dict:
        return {"kind": "periodic-points", "periods": dict(self.periods)}


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _reach_steps(table: tuple[int, ...]):
    """First-visit steps for every ordered pair under a finite map, or the
    first missing pair.  Visits stabilise within one sweep of the point count."""
    n = len(table)
    steps: dict[tuple[int, int], int] = {}
    for x in range(n):
        cur = x
        for j in range(1, n + 1):
            cur = table[cur]
            steps.setdefault((x, cur), j)
        for y in range(n):
            if (x, y) not in steps:
                return None, (x, y)
    return steps, None


def _least_period(table: tuple[int, ...], x: int) -> int | None:
    cur = x
    for j in range(1, len(table) + 1):
        cur = table[cur]
        if cur == x:
            return j
    return None


def _point_set_key(labels) -> str:
    return ",".join(labels)


# ---------------------------------------------------------------------------
# finite systems
# ---------------------------------------------------------------------------


def _finite_transitive(sys: FiniteSystem) -> Verdict:
    steps, missing = _reach_steps(sys.map_table)
    pts = sys.space.points
    if missing is not None:
        x, y = missing
        return refuted(
            METHOD_EXHAUSTIVE, {"kind": "unreachable-pair", "from": pts[x], "to": pts[y]}
        )
    table = {f"{pts[x]}|{pts[y]}": n for (x, y), n in sorted(steps.items())}
    return proved(METHOD_EXHAUSTIVE, {"kind": "reach-table", "steps": table})


def _finite_totally_transitive(sys: FiniteSystem) -> Verdict:
    pts = sys.space.points
    base = _finite_transitive(sys)
    if base.status == "refuted":
        ce = base.counterexample
        return refuted(
            METHOD_EXHAUSTIVE,
            {"kind": "power-unreachable", "power": 1, "from": ce["from"], "to": ce["to"]},
        )
    n = sys.size
    if n == 1:
        return proved(METHOD_EXHAUSTIVE, {"kind": "singleton-space"})
    # transitive on >= 2 points means a single n-cycle, and the n-th power is
    # the identity, which moves no point
    return refuted(
        METHOD_EXHAUSTIVE,
        {"kind": "power-unreachable", "power": n, "from": pts[0], "to": pts[1]},
    )


def _finite_weakly_mixing(sys: FiniteSystem) -> Verdict:
    n = sys.size
    steps, missing = _reach_steps(product_map(sys))
    if missing is None:
        return proved(METHOD_EXHAUSTIVE, {"kind": "singleton-space"})
    pts = sys.space.points
    x, y = missing
    return refuted(
        METHOD_EXHAUSTIVE,
        {
            "kind": "product-unreachable",
            "from": [pts[x // n], pts[x % n]],
            "to": [pts[y // n], pts[y % n]],
        },
    )


def _finite_dense_periodic(sys: FiniteSystem) -> Verdict:
    per = PeriodicPoints.scan(sys)
    if not per.covers(sys):
        periodic = {label for label, _ in per.periods}
        missing = next(p for p in sys.space.points if p not in periodic)
        return refuted(METHOD_EXHAUSTIVE, {"kind": "aperiodic-point", "point": missing})
    per.validate(sys)
    return proved(METHOD_EXHAUSTIVE, per.as_payload())


def _finite_dense_small_periodic(sys: FiniteSystem, k_max: int | None) -> Verdict:
    pts = sys.space.points
    n = sys.size
    bound = max(k_max or n, n)  # least periods never exceed the point count
    cells = {}
    for x in range(n):
        p = _least_period(sys.map_table, x)
        if p is None or p > bound:
            return refuted(
                METHOD_EXHAUSTIVE,
                {"kind": "cell-without-invariant", "cell": pts[x], "k_bound": bound},
            )
        cells[pts[x]] = {"set": [pts[x]], "k": p}
    return proved(
        METHOD_EXHAUSTIVE, {"kind": "small-periodic-in-cells", "cells": cells}
    )


def _finite_exact(sys: FiniteSystem) -> Verdict:
    pts = sys.space.points
    full = (1 << sys.size) - 1
    table = {}
    for u in range(1, full + 1):
        image = u
        seen = set()
        found = None
        step = 0
        while image not in seen:
            seen.add(image)
            image = sys.image_mask(image)
            step += 1
            if image == full:
                found = step
                break
        if found is None:
            return refuted(
                METHOD_EXHAUSTIVE,
                {
                    "kind": "never-covers",
                    "set": [pts[i] for i in iter_bits(u)],
                },
            )
        table[_point_set_key(pts[i] for i in iter_bits(u))] = found
    return proved(METHOD_EXHAUSTIVE, {"kind": "cover-table", "steps": table})


# ---------------------------------------------------------------------------
# shifts
# ---------------------------------------------------------------------------


def _unreachable_symbols(sft: ShiftSystem, src: int, dst: int) -> dict:
    closure = forward_closure(sft.adjacency, 1 << src)
    return {
        "kind": "unreachable-symbols",
        "from": sft.alphabet[src],
        "to": sft.alphabet[dst],
        "closure": sorted(sft.alphabet[i] for i in iter_bits(closure)),
    }


def _primitivity_obstruction(sft: ShiftSystem) -> dict:
    adj = sft.adjacency
    connected, pair = is_strongly_connected(adj)
    if not connected:
        return _unreachable_symbols(sft, *pair)
    period = graph_period(adj)
    classes = cyclic_classes(adj, period)
    return {
        "kind": "cyclic-partition",
        "period": period,
        "classes": [[sft.alphabet[i] for i in group] for group in classes],
    }


def wielandt_bound(size: int) -> int:
    return (size - 1) ** 2 + 1


def _shift_transitive(sft: ShiftSystem) -> Verdict:
    adj = sft.adjacency
    connected, pair = is_strongly_connected(adj)
    if not connected:
        return refuted(METHOD_GRAPH, _unreachable_symbols(sft, *pair))
    paths = {}
    for a in range(sft.size):
        for b in range(sft.size):
            path = shortest_path(adj, a, b)
            paths[f"{sft.alphabet[a]}|{sft.alphabet[b]}"] = "".join(
                sft.alphabet[i] for i in path
            )
    return proved(METHOD_GRAPH, {"kind": "symbol-path-table", "paths": paths})


def _shift_totally_transitive(sft: ShiftSystem) -> Verdict:
    # power positivity at the Wielandt exponent decides primitivity outright
    exponent = wielandt_bound(sft.size)
    power = bool_mat_power(sft.adjacency, exponent)
    if all_positive(power):
        return proved(METHOD_GRAPH, {"kind": "positive-power", "exponent": exponent})
    return refuted(METHOD_GRAPH, _primitivity_obstruction(sft))


def _shift_weakly_mixing(sft: ShiftSystem) -> Verdict:
    # decision route: strong connectivity plus trivial cycle-length gcd
    adj = sft.adjacency
    connected, pair = is_strongly_connected(adj)
    primitive = connected and graph_period(adj) == 1

    # independent cross-check on the product graph
    m = sft.size
    product_adj = []
    for a in range(m):
        for b in range(m):
            mask = 0
            for c in iter_bits(adj[a]):
                for d in iter_bits(adj[b]):
                    mask |= 1 << (c * m + d)
            product_adj.append(mask)
    product_connected, _ = is_strongly_connected(tuple(product_adj))
    if product_connected != primitive:
        raise ConsistencyError(
            "cycle-gcd route and product-graph route disagree on weak mixing"
        )

    if primitive:
        exponent = wielandt_bound(m)
        return proved(METHOD_GRAPH, {"kind": "positive-power", "exponent": exponent})
    if not connected:
        return refuted(METHOD_GRAPH, _unreachable_symbols(sft, *pair))
    return refuted(METHOD_GRAPH, _primitivity_obstruction(sft))


def _edge_return_paths(sft: ShiftSystem) -> dict[str, str]:
    adj = sft.adjacency
    out = {}
    for a in range(sft.size):
        for b in iter_bits(adj[a]):
            path = shortest_path(adj, b, a)
            out[f"{sft.alphabet[a]}|{sft.alphabet[b]}"] = "".join(
                sft.alphabet[i] for i in path
            )
    return out


def _shift_periodic_refutation(sft: ShiftSystem) -> dict | None:
    """A cylinder without periodic points exists exactly when reachability is
    asymmetric; then the word along a one-way path never returns."""
    failure = scc_closure_failure(sft.adjacency)
    if failure is None:
        return None
    a, b = failure
    path = shortest_path(sft.adjacency, a, b)
    word = "".join(sft.alphabet[i] for i in path)
    closure = forward_closure(sft.adjacency, 1 << b)
    return {
        "kind": "cylinder-without-periodic",
        "word": word,
        "closure": sorted(sft.alphabet[i] for i in iter_bits(closure)),
    }


def _shift_dense_periodic(sft: ShiftSystem) -> Verdict:
    failure = _shift_periodic_refutation(sft)
    if failure is not None:
        return refuted(METHOD_GRAPH, failure)
    cells = {}
    for symbol in sft.alphabet:
        word, _ = find_periodic_point_in_cylinder(sft, symbol)
        cells[symbol] = word
    return proved(
        METHOD_GRAPH,
        {
            "kind": "periodic-in-cylinders",
            "level": 1,
            "cells": cells,
            "edge_returns": _edge_return_paths(sft),
        },
    )


def _shift_dense_small_periodic(sft: ShiftSystem, level: int) -> Verdict:
    failure = _shift_periodic_refutation(sft)
    if failure is not None:
        return refuted(METHOD_GRAPH, failure)
    cells = {}
    for word in allowed_words(sft, level):
        w, period = find_periodic_point_in_cylinder(sft, word)
        cells[word] = {"point": w, "k": period}
    return proved(
        METHOD_GRAPH,
        {
            "kind": "small-periodic-in-cylinders",
            "level": level,
            "cells": cells,
            "edge_returns": _edge_return_paths(sft),
        },
    )


def _shift_exact(sft: ShiftSystem) -> Verdict:
    """Exactness coincides with primitivity for essential vertex shifts; the
    decision route searches for the least power with a fully positive
    reachability matrix and cross-checks cylinder coverage."""
    adj = sft.adjacency
    bound = wielandt_bound(sft.size)
    power = adj
    exponent = None
    for e in range(1, bound + 1):
        if all_positive(power):
            exponent = e
            break
        power = tuple(step_mask(adj, row) for row in power)
    if exponent is None:
        return refuted(METHOD_GRAPH, _primitivity_obstruction(sft))

    # cross-check: the image of every cylinder at low levels covers the space
    # after level - 1 + exponent shifts (exact reach from the final symbol)
    full = (1 << sft.size) - 1
    coverage: dict[str, dict[str, int]] = {}
    for level in range(1, min(3, max(1, sft.size)) + 1):
        words = allowed_words(sft, level)
        if len(words) > 64:
            break
        per_level = {}
        for u in words:
            last = sft.symbol_index(u[-1])
            if exact_reach(adj, 1 << last, exponent) != full:
                raise ConsistencyError(
                    "positive power does not cover the space from every symbol"
                )
            per_level[u] = (level - 1) + exponent
        coverage[str(level)] = per_level
    return proved(
        METHOD_GRAPH,
        {"kind": "positive-power", "exponent": exponent, "cylinder_coverage": coverage},
    )


# ---------------------------------------------------------------------------
# piecewise-linear interval maps
# ---------------------------------------------------------------------------


def _pl_reach_pairs(f: PLSystem, depth: int, horizon: int, power: int = 1):
    """First step count at which each cover cell's iterated image meets each
    other cell, under the ``power``-th iterate.  Returns (pairs, failure)."""
    cells = dyadic_cells(depth)
    pairs: dict[str, int] = {}
    for i, cell in enumerate(cells):
        image = IntervalUnion.of([cell])
        met: dict[int, int] = {}
        for n in range(1, horizon + 1):
            for _ in range(power):
                image = pl_image_of_union(f, image)
            for j, target in enumerate(cells):
                if j not in met and image.intersects(target):
                    met[j] = n
            if len(met) == len(cells):
                break
        for j in range(len(cells)):
            if j not in met:
                return pairs, (i, j)
            pairs[f"{i}|{j}"] = met[j]
    return pairs, None


def _pl_transitive(f: PLSystem, depth: int, horizon: int) -> Verdict:
    pairs, failure = _pl_reach_pairs(f, depth, horizon)
    if failure is not None:
        i, j = failure
        return unknown(
            METHOD_BOUNDED,
            f"cover cell {i} did not meet cell {j} within horizon {horizon} "
            f"at depth {depth}",
        )
    return proved(
        METHOD_BOUNDED,
        {"kind": "cover-reach-table", "depth": depth, "horizon": horizon, "pairs": pairs},
    )


def _pl_totally_transitive(f: PLSystem, n_max: int, depth: int, horizon: int) -> Verdict:
    tables = {}
    for power in range(1, n_max + 1):
        pairs, failure = _pl_reach_pairs(f, depth, horizon, power)
        if failure is not None:
            i, j = failure
            return unknown(
                METHOD_BOUNDED,
                f"power {power}: cover cell {i} did not meet cell {j} within "
                f"horizon {horizon} at depth {depth}",
            )
        tables[str(power)] = pairs
    return proved(
        METHOD_BOUNDED,
        {
            "kind": "power-cover-tables",
            "depth": depth,
            "horizon": horizon,
            "n_max": n_max,
            "tables": tables,
        },
    )


def _pl_weakly_mixing(f: PLSystem, depth: int, horizon: int) -> Verdict:
    cells = dyadic_cells(depth)
    step_sets: set[int] = set()
    for i, cell in enumerate(cells):
        image = IntervalUnion.of([cell])
        masks = [0] * len(cells)
        for n in range(1, horizon + 1):
            image = pl_image_of_union(f, image)
            for j, target in enumerate(cells):
                if image.intersects(target):
                    masks[j] |= 1 << n
        for j, mask in enumerate(masks):
            if mask == 0:
                return unknown(
                    METHOD_BOUNDED,
                    f"cover cell {i} did not meet cell {j} within horizon {horizon}",
                )
            step_sets.add(mask)
    distinct = sorted(step_sets)
    for a_idx, a in enumerate(distinct):
        for b in distinct[a_idx:]:
            if not a & b:
                return unknown(
                    METHOD_BOUNDED,
                    f"two cover-cell pairs share no step count within horizon {horizon}",
                )
    return proved(
        METHOD_BOUNDED,
        {
            "kind": "pairwise-common-step-cover",
            "depth": depth,
            "horizon": horizon,
            "distinct_step_sets": [sorted(iter_bits(m)) for m in distinct],
        },
    )


def _pl_periodic_bracket(f: PLSystem, cell: Interval, k_max: int):
    """Smallest period k and an exact rational point of the cell fixed by the
    k-th iterate, found piecewise on the iterate's linear segments."""
    for k in range(1, k_max + 1):
        fk = pl_iterate(f, k)
        for idx in range(len(fk.breakpoints) - 1):
            lo = max(fk.breakpoints[idx], cell.lo)
            hi = min(fk.breakpoints[idx + 1], cell.hi)
            if lo > hi:
                continue
            width = fk.breakpoints[idx + 1] - fk.breakpoints[idx]
            slope = (fk.values[idx + 1] - fk.values[idx]) / width
            intercept = fk.values[idx] - slope * fk.breakpoints[idx]
            if slope == 1:
                if intercept == 0:
                    return lo, k
                continue
            candidate = intercept / (1 - slope)
            if lo <= candidate <= hi:
                return candidate, k
    return None


def _pl_dense_periodic(f: PLSystem, depth: int, k_max: int) -> Verdict:
    cells = {}
    for i, cell in enumerate(dyadic_cells(depth)):
        bracket = _pl_periodic_bracket(f, cell, k_max)
        if bracket is None:
            return unknown(
                METHOD_BOUNDED,
                f"no certified periodic point in cover cell {i} with period <= {k_max}",
            )
        point, k = bracket
        cells[str(i)] = {"point": str(point), "period": k}
    return proved(
        METHOD_BOUNDED, {"kind": "periodic-in-cover", "depth": depth, "cells": cells}
    )


def _pl_dense_small_periodic(f: PLSystem, depth: int, k_max: int) -> Verdict:
    cells = {}
    for i, cell in enumerate(dyadic_cells(depth)):
        bracket = _pl_periodic_bracket(f, cell, k_max)
        if bracket is None:
            return unknown(
                METHOD_BOUNDED,
                f"no certified invariant subset of cover cell {i} with k <= {k_max}",
            )
        point, k = bracket
        cells[str(i)] = {"set": [str(point)], "k": k}
    return proved(
        METHOD_BOUNDED,
        {"kind": "small-periodic-in-cover", "depth": depth, "cells": cells},
    )


def _pl_exact(f: PLSystem, depth: int, horizon: int) -> Verdict:
    cells = {}
    for i, cell in enumerate(dyadic_cells(depth)):
        image = IntervalUnion.of([cell])
        found = None
        for n in range(1, horizon + 1):
            image = pl_image_of_union(f, image)
            if image == UNIT_UNION:
                found = n
                break
        if found is None:
            return unknown(
                METHOD_BOUNDED,
                f"cover cell {i} did not cover [0,1] within horizon {horizon} "
                f"at depth {depth}",
            )
        cells[str(i)] = found
    return proved(
        METHOD_BOUNDED,
        {"kind": "cover-exact-table", "depth": depth, "horizon": horizon, "cells": cells},
    )


# ---------------------------------------------------------------------------
# public checkers
# ---------------------------------------------------------------------------

PL_DEPTH = 3
PL_HORIZON = 12
PL_K_MAX = 8
PL_POWERS = 3


def is_transitive(sys, *, depth: int = PL_DEPTH, horizon: int | None = None) -> Verdict:
    if isinstance(sys, FiniteSystem):
        return _finite_transitive(sys)
    if isinstance(sys, ShiftSystem):
        return _shift_transitive(sys)
    if isinstance(sys, PLSystem):
        return _pl_transitive(sys, depth, horizon or PL_HORIZON)
    raise SystemBuildError(f"unsupported system {type(sys).__name__}")


def is_totally_transitive(
    sys, n_max: int | None = None, *, depth: int = PL_DEPTH, horizon: int | None = None
) -> Verdict:
    if isinstance(sys, FiniteSystem):
        return _finite_totally_transitive(sys)
    if isinstance(sys, ShiftSystem):
        return _shift_totally_transitive(sys)
    if isinstance(sys, PLSystem):
        return _pl_totally_transitive(sys, n_max or PL_POWERS, depth, horizon or PL_HORIZON)
    raise SystemBuildError(f"unsupported system {type(sys).__name__}")


def is_weakly_mixing(sys, *, depth: int = PL_DEPTH, horizon: int | None = None) -> Verdict:
    if isinstance(sys, FiniteSystem):
        return _finite_weakly_mixing(sys)
    if isinstance(sys, ShiftSystem):
        return _shift_weakly_mixing(sys)
    if isinstance(sys, PLSystem):
        return _pl_weakly_mixing(sys, depth, horizon or PL_HORIZON)
    raise SystemBuildError(f"unsupported system {type(sys).__name__}")


def has_dense_periodic_points(
    sys, *, depth: int = PL_DEPTH, k_max: int | None = None
) -> Verdict:
    if isinstance(sys, FiniteSystem):
        return _finite_dense_periodic(sys)
    if isinstance(sys, ShiftSystem):
        return _shift_dense_periodic(sys)
    if isinstance(sys, PLSystem):
        return _pl_dense_periodic(sys, depth, k_max or PL_K_MAX)
    raise SystemBuildError(f"unsupported system {type(sys).__name__}")


def has_dense_small_periodic_sets(
    sys, k_max: int | None = None, *, level: int = 1, depth: int = PL_DEPTH
) -> Verdict:
    if isinstance(sys, FiniteSystem):
        return _finite_dense_small_periodic(sys, k_max)
    if isinstance(sys, ShiftSystem):
        return _shift_dense_small_periodic(sys, level)
    if isinstance(sys, PLSystem):
        return _pl_dense_small_periodic(sys, depth, k_max or PL_K_MAX)
    raise SystemBuildError(f"unsupported system {type(sys).__name__}")


def is_topologically_exact(
    sys, horizon: int | None = None, *, depth: int = PL_DEPTH
) -> Verdict:
    if isinstance(sys, FiniteSystem):
        return _finite_exact(sys)
    if isinstance(sys, ShiftSystem):
        return _shift_exact(sys)
    if isinstance(sys, PLSystem):
        return _pl_exact(sys, depth, horizon or PL_HORIZON)
    raise SystemBuildError(f"unsupported system {type(sys).__name__}")


def classify(
    sys,
    *,
    k_max: int | None = None,
    n_max: int | None = None,
    horizon: int | None = None,
    depth: int = PL_DEPTH,
    level: int = 1,
) -> dict[str, Verdict]:
    """All six atomic properties plus the three composite classifications.

    Composites use three-valued conjunction: a Refuted component refutes, an
    Unknown component (with no refutation) leaves the composite Unknown.
    """
    atoms = {
        "transitive": is_transitive(sys, depth=depth, horizon=horizon),
        "totally-transitive": is_totally_transitive(
            sys, n_max, depth=depth, horizon=horizon
        ),
        "weakly-mixing": is_weakly_mixing(sys, depth=depth, horizon=horizon),
        "dense-periodic-points": has_dense_periodic_points(sys, depth=depth, k_max=k_max),
        "dense-small-periodic-sets": has_dense_small_periodic_sets(
            sys, k_max, level=level, depth=depth
        ),
        "topologically-exact": is_topologically_exact(sys, horizon, depth=depth),
    }
    record = dict(atoms)
    record["devaney-chaotic"] = conjoin(
        {
            "transitive": atoms["transitive"],
            "dense-periodic-points": atoms["dense-periodic-points"],
        }
    )
    record["f-system"] = conjoin(
        {
            "totally-transitive": atoms["totally-transitive"],
            "dense-periodic-points": atoms["dense-periodic-points"],
        }
    )
    record["hy-system"] = conjoin(
        {
            "totally-transitive": atoms["totally-transitive"],
            "dense-small-periodic-sets": atoms["dense-small-periodic-sets"],
        }
    )
    return record
