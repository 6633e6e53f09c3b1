"""Definition-level brute-force oracle for finite systems.

Every property is evaluated by quantifying over all nonempty subsets as open
sets of the discrete topology, with no algorithmic shortcut.  Step counts are
bounded by the point count of the system being quantified over (first visits
of a finite orbit occur within one sweep of the state space, so the bound is
exact, not an approximation); invariant-set searches use point count times
``k_max``.  The oracle exists to validate the optimised checkers and is
deliberately kept independent of them.
"""

from __future__ import annotations

from .metric import iter_bits
from .systems import FiniteSystem, SystemBuildError
from .verdicts import METHOD_EXHAUSTIVE, Verdict, proved, refuted

ORACLE_MAX_POINTS = 6


def _point_powers(table: tuple[int, ...], max_steps: int) -> list[tuple[int, ...]]:
    """pows[j][x] = j-th iterate of x, for j = 0..max_steps."""
    n = len(table)
    pows = [tuple(range(n))]
    for _ in range(max_steps):
        prev = pows[-1]
        pows.append(tuple(table[prev[x]] for x in range(n)))
    return pows


def _image_tables(table: tuple[int, ...], max_steps: int) -> list[list[int]]:
    """imgs[j][mask] = j-th image of the subset ``mask``."""
    n = len(table)
    total = 1 << n
    pows = _point_powers(table, max_steps)
    imgs = []
    for j in range(max_steps + 1):
        pj = pows[j]
        img = [0] * total
        for mask in range(1, total):
            low = mask & -mask
            img[mask] = img[mask ^ low] | (1 << pj[low.bit_length() - 1])
        imgs.append(img)
    return imgs


def _labels(sys: FiniteSystem, mask: int) -> list[str]:
    return [sys.space.points[i] for i in iter_bits(mask)]


def _transitive_scan(table: tuple[int, ...], bound: int):
    """All-subset-pairs transitivity scan.  Returns (steps, failing_pair)."""
    n = len(table)
    total = 1 << n
    imgs = _image_tables(table, bound)
    steps: dict[tuple[int, int], int] = {}
    for u in range(1, total):
        images = [imgs[j][u] for j in range(1, bound + 1)]
        for v in range(1, total):
            hit = None
            for j, im in enumerate(images, start=1):
                if im & v:
                    hit = j
                    break
            if hit is None:
                return None, (u, v)
            steps[(u, v)] = hit
    return steps, None


def _oracle_transitive(sys: FiniteSystem) -> Verdict:
    bound = sys.size
    steps, failing = _transitive_scan(sys.map_table, bound)
    if failing is not None:
        u, v = failing
        return refuted(
            METHOD_EXHAUSTIVE,
            {
                "kind": "unreachable-open-pair",
                "source": _labels(sys, u),
                "target": _labels(sys, v),
                "bound": bound,
            },
        )
    pts = sys.space.points
    table = {
        f"{','.join(pts[i] for i in iter_bits(u))}|{','.join(pts[i] for i in iter_bits(v))}": j
        for (u, v), j in sorted(steps.items())
    }
    return proved(METHOD_EXHAUSTIVE, {"kind": "open-reach-table", "steps": table})


def _oracle_totally_transitive(sys: FiniteSystem, n_max: int) -> Verdict:
    bound = sys.size
    table = tuple(sys.map_table)
    current = table
    tables = {}
    for power in range(1, n_max + 1):
        if power > 1:
            current = tuple(table[current[x]] for x in range(sys.size))
        steps, failing = _transitive_scan(current, bound)
        if failing is not None:
            u, v = failing
            return refuted(
                METHOD_EXHAUSTIVE,
                {
                    "kind": "power-unreachable-open",
                    "power": power,
                    "source": _labels(sys, u),
                    "target": _labels(sys, v),
                    "bound": bound,
                },
            )
        pts = sys.space.points
        tables[str(power)] = {
            f"{','.join(pts[i] for i in iter_bits(u))}|{','.join(pts[i] for i in iter_bits(v))}": j
            for (u, v), j in sorted(steps.items())
        }
    return proved(
        METHOD_EXHAUSTIVE,
        {"kind": "open-power-tables", "n_max": n_max, "tables": tables},
    )


def _oracle_weakly_mixing(sys: FiniteSystem) -> Verdict:
    """Product-system transitivity over basis opens.

    Every open of the discrete product contains a box U1 x U2, so it is
    enough to quantify over boxes; a box pair needs one simultaneous step
    count, i.e. the per-factor step sets must intersect.
    """
    n = sys.size
    bound = n * n
    total = 1 << n
    imgs = _image_tables(sys.map_table, bound)
    reps: dict[int, tuple[int, int]] = {}  # distinct step set -> first pair
    for u in range(1, total):
        for v in range(1, total):
            mask = 0
            for j in range(1, bound + 1):
                if imgs[j][u] & v:
                    mask |= 1 << j
            if mask == 0:
                return refuted(
                    METHOD_EXHAUSTIVE,
                    {
                        "kind": "no-common-step",
                        "first": [_labels(sys, u), _labels(sys, v)],
                        "second": [_labels(sys, u), _labels(sys, v)],
                        "bound": bound,
                    },
                )
            reps.setdefault(mask, (u, v))
    masks = sorted(reps)
    for i, a in enumerate(masks):
        for b in masks[i:]:
            if not a & b:
                return refuted(
                    METHOD_EXHAUSTIVE,
                    {
                        "kind": "no-common-step",
                        "first": [_labels(sys, reps[a][0]), _labels(sys, reps[a][1])],
                        "second": [_labels(sys, reps[b][0]), _labels(sys, reps[b][1])],
                        "bound": bound,
                    },
                )
    return proved(
        METHOD_EXHAUSTIVE,
        {
            "kind": "pairwise-common-step-opens",
            "bound": bound,
            "distinct_step_sets": [sorted(iter_bits(m)) for m in masks],
        },
    )


def _oracle_dense_periodic(sys: FiniteSystem) -> Verdict:
    n = sys.size
    periodic_mask = 0
    periods = {}
    for x in range(n):
        cur = x
        for j in range(1, n + 1):
            cur = sys.map_table[cur]
            if cur == x:
                periodic_mask |= 1 << x
                periods[sys.space.points[x]] = j
                break
    total = 1 << n
    for u in range(1, total):
        if not u & periodic_mask:
            return refuted(
                METHOD_EXHAUSTIVE,
                {"kind": "open-without-periodic", "set": _labels(sys, u), "bound": n},
            )
    return proved(METHOD_EXHAUSTIVE, {"kind": "periodic-points", "periods": periods})


def _oracle_dense_small_periodic(sys: FiniteSystem, k_max: int) -> Verdict:
    n = sys.size
    bound = n * k_max
    imgs = _image_tables(sys.map_table, bound)
    total = 1 << n
    cells = {}
    for u in range(1, total):
        found = None
        for k in range(1, bound + 1):
            img = imgs[k]
            sub = u & -u  # nonempty subsets of u in ascending mask order
            while True:
                if img[sub] & ~sub == 0:
                    found = (sub, k)
                    break
                if sub == u:
                    break
                sub = (sub - u) & u
            if found:
                break
        if found is None:
            return refuted(
                METHOD_EXHAUSTIVE,
                {
                    "kind": "open-without-invariant",
                    "set": _labels(sys, u),
                    "k_bound": bound,
                },
            )
        sub, k = found
        cells[",".join(_labels(sys, u))] = {"set": _labels(sys, sub), "k": k}
    return proved(
        METHOD_EXHAUSTIVE,
        {"kind": "small-periodic-in-opens", "cells": cells, "k_bound": bound},
    )


def _oracle_exact(sys: FiniteSystem, horizon: int) -> Verdict:
    n = sys.size
    total = 1 << n
    full = total - 1
    imgs = _image_tables(sys.map_table, horizon)
    steps = {}
    for u in range(1, total):
        found = None
        for j in range(1, horizon + 1):
            if imgs[j][u] == full:
                found = j
                break
        if found is None:
            return refuted(
                METHOD_EXHAUSTIVE,
                {
                    "kind": "never-covers-bounded",
                    "set": _labels(sys, u),
                    "horizon": horizon,
                },
            )
        steps[",".join(_labels(sys, u))] = found
    return proved(METHOD_EXHAUSTIVE, {"kind": "cover-table", "steps": steps})


def brute_force_oracle(
    sys: FiniteSystem,
    prop: str,
    k_max: int | None = None,
    n_max: int | None = None,
    horizon: int | None = None,
) -> Verdict:
    """Evaluate a property verbatim from its definition on a small finite
    system.  Caps at 6 points; beyond that the search spaces explode."""
    if not isinstance(sys, FiniteSystem):
        raise SystemBuildError("the brute-force oracle handles finite systems only")
    if sys.size > ORACLE_MAX_POINTS:
        raise SystemBuildError(
            f"oracle capped at {ORACLE_MAX_POINTS} points, got {sys.size}"
        )
    n = sys.size
    if prop == "transitive":
        return _oracle_transitive(sys)
    if prop == "totally-transitive":
        return _oracle_totally_transitive(sys, n_max or n)
    if prop == "weakly-mixing":
        return _oracle_weakly_mixing(sys)
    if prop == "dense-periodic-points":
        return _oracle_dense_periodic(sys)
    if prop == "dense-small-periodic-sets":
        return _oracle_dense_small_periodic(sys, k_max or n)
    if prop == "topologically-exact":
        return _oracle_exact(sys, horizon or n)
    raise SystemBuildError(f"unknown property {prop!r}")
