"""Induced hyperspace dynamics.

For a finite system the hyperspace is materialised literally: all nonempty
subsets as bit masks, the induced map as pointwise image, and the exact
Hausdorff metric between states.  For shifts the hyperspace is infinite, so
basic-open conditions are verified at a cylinder level with an explicit
search budget; verdicts are Proved with a witness table, Refuted only for
finitely checkable impossibilities, and otherwise Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .graphs import bool_mat_mul, bool_mat_power, forward_closure, shortest_path, transpose_masks
from .metric import ClosedSet, FinitePointSpace, iter_bits
from .systems import (
    FiniteSystem,
    ShiftSystem,
    SystemBuildError,
    allowed_words,
    cylinder_is_singleton,
    eventually_periodic_block,
    forced_tail,
)
from .verdicts import METHOD_BOUNDED, Verdict, proved, refuted, unknown
from .witnesses import PeriodicSetWitness, combine_witnesses, find_periodic_point_in_cylinder

MAX_ENUM_WORDS = 16  # 2^W basic opens are enumerated; beyond this we refuse


class BudgetExceededError(RuntimeError):
    """An enumeration cap was hit; use a bounded verification mode instead."""


# ---------------------------------------------------------------------------
# the literal hyperspace of a finite system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HyperSystem:
    """The powerset hyperspace of a finite system.

    States are the 2^n - 1 nonempty subsets in numeric bit-mask order; the
    induced map sends a state to its pointwise image; distances between
    states realise the Hausdorff metric exactly.
    """

    base: FiniteSystem
    states: tuple[int, ...]
    induced: tuple[int, ...]
    min_dist: tuple[tuple[Fraction, ...], ...]

    def induced_of(self, state_mask: int) -> int:
        return self.induced[state_mask - 1]

    def distance(self, a_mask: int, b_mask: int) -> Fraction:
        to_b = self.min_dist[b_mask - 1]
        to_a = self.min_dist[a_mask - 1]
        d1 = max(to_b[x] for x in iter_bits(a_mask))
        d2 = max(to_a[y] for y in iter_bits(b_mask))
        return max(d1, d2)

    def state_label(self, state_mask: int) -> str:
        pts = self.base.space.points
        return "{" + ",".join(pts[i] for i in iter_bits(state_mask)) + "}"

    def as_finite_system(self) -> FiniteSystem:
        """The hyperspace as a finite system in its own right."""
        n = self.base.size
        if n > 8:
            raise BudgetExceededError(
                "materialising the hyperspace metric table is capped at 8 base points"
            )
        labels = tuple(self.state_label(m) for m in self.states)
        table = tuple(
            tuple(self.distance(a, b) for b in self.states) for a in self.states
        )
        space = FinitePointSpace(labels, table)
        map_table = tuple(self.induced_of(m) - 1 for m in self.states)
        return FiniteSystem(space, map_table)


def powerset_hyperspace(sys: FiniteSystem, cap: int = 16) -> HyperSystem:
    """Full enumeration of the hyperspace of a finite system.

    Refuses systems larger than ``cap`` points; shift-style bounded
    verification is the intended fallback there.
    """
    n = sys.size
    if n > cap:
        raise BudgetExceededError(
            f"powerset hyperspace of {n} points exceeds the cap of {cap}"
        )
    total = 1 << n
    point_image = [1 << sys.map_table[i] for i in range(n)]
    induced = [0] * total
    for mask in range(1, total):
        low = mask & -mask
        induced[mask] = induced[mask ^ low] | point_image[low.bit_length() - 1]

    dist = sys.space.dist
    min_dist: list[tuple[Fraction, ...]] = [()] * total
    for mask in range(1, total):
        low_idx = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        if rest:
            prev = min_dist[rest]
            min_dist[mask] = tuple(
                min(prev[x], dist[x][low_idx]) for x in range(n)
            )
        else:
            min_dist[mask] = tuple(dist[x][low_idx] for x in range(n))

    states = tuple(range(1, total))
    return HyperSystem(
        base=sys,
        states=states,
        induced=tuple(induced[m] for m in states),
        min_dist=tuple(min_dist[m] for m in states),
    )


def induced_image(c: ClosedSet, sys: FiniteSystem) -> ClosedSet:
    """Pointwise image of a closed set under the base map."""
    if c.space != sys.space:
        raise SystemBuildError("set does not live in the system's space")
    return ClosedSet(sys.space, sys.image_mask(c.mask))


# ---------------------------------------------------------------------------
# cylinder-level machinery for shifts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderProfile:
    """Finite fingerprint of a closed subset of a shift space: the set of
    level-``level`` cylinders it meets.  Used only to express basic-open
    conditions, never as a conjugate model of the hyperspace."""

    level: int
    blocks: tuple[str, ...]

    def __post_init__(self):
        if self.level < 1:
            raise SystemBuildError("cylinder level must be positive")
        if not self.blocks:
            raise SystemBuildError("a profile needs at least one block")
        if any(len(b) != self.level for b in self.blocks):
            raise SystemBuildError("every block must have length equal to the level")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    def validate(self, sft: ShiftSystem) -> None:
        for b in self.blocks:
            if not sft.word_allowed(b):
                raise SystemBuildError(f"block {b!r} is not allowed")


def word_graph(sft: ShiftSystem, level: int) -> tuple[tuple[str, ...], tuple[int, ...]]:
    """Allowed words at ``level`` and the one-shift successor relation
    between their cylinders, as adjacency bit masks."""
    words = allowed_words(sft, level)
    index = {w: i for i, w in enumerate(words)}
    succ = []
    for w in words:
        mask = 0
        stem = w[1:]
        for j in iter_bits(sft.adjacency[sft.symbol_index(w[-1])]):
            mask |= 1 << index[stem + sft.alphabet[j]]
        succ.append(mask)
    return words, tuple(succ)


def cylinder_reach(sft: ShiftSystem, u: str, v: str, n: int) -> bool:
    """Whether some point of the cylinder of ``u`` lands in the cylinder of
    ``v`` after exactly ``n`` shifts.

    Equivalent to the existence of an allowed word of length n + level with
    prefix u whose block at position n is v.
    """
    if len(u) != len(v):
        raise SystemBuildError("cylinder words must have equal length")
    if n < 1:
        raise SystemBuildError("step count must be positive")
    for w in (u, v):
        if not sft.word_allowed(w):
            raise SystemBuildError(f"word {w!r} is not allowed")
    words, succ = word_graph(sft, len(u))
    index = {w: i for i, w in enumerate(words)}
    frontier = 1 << index[u]
    for _ in range(n):
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= succ[i]
        frontier = nxt
        if not frontier:
            return False
    return bool((frontier >> index[v]) & 1)


def default_horizon(sft: ShiftSystem, level: int) -> int:
    """Search budget: past transient plus period of the n-step reachability
    relation for every shipped example."""
    return 2 * (sft.size**level) ** 2 + level


def _matrix_timeline(succ: tuple[int, ...], step: int, horizon: int):
    """Boolean powers of the ``step``-fold successor matrix for k = 1..horizon.

    Returns (mats, id_seq): ``mats`` holds the distinct matrices in order of
    first appearance as (k, rows, cols); ``id_seq[k-1]`` is the index into
    ``mats`` of the matrix at k.  The power sequence is eventually periodic,
    so enumeration stops at the first repeat and the tail is filled in
    cyclically.
    """
    base = bool_mat_power(succ, step)
    mats: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
    seen: dict[tuple[int, ...], int] = {}
    id_seq: list[int] = []
    current = base
    k = 1
    while k <= horizon:
        if current in seen:
            first = seen[current]
            period = k - first
            for kk in range(k, horizon + 1):
                id_seq.append(id_seq[(first - 1) + (kk - first) % period])
            break
        seen[current] = k
        mats.append((k, current, transpose_masks(current)))
        id_seq.append(len(mats) - 1)
        current = bool_mat_mul(current, base)
        k += 1
    return mats, id_seq


def _pair_condition(rows, cols, p: int, q: int) -> bool:
    return all(rows[u] & q for u in iter_bits(p)) and all(
        cols[v] & p for v in iter_bits(q)
    )


def _subset_key(words: tuple[str, ...], mask: int) -> str:
    return "+".join(words[i] for i in iter_bits(mask))


def _decide_singleton_pair(
    sft: ShiftSystem,
    words: tuple[str, ...],
    p_mask: int,
    q_mask: int,
    step: int,
):
    """Exact decision for a source open whose cylinders are single points.

    The image of the unique closed set in the open is one point per cylinder,
    so the reachability condition at n reduces to a fingerprint-set equality
    that is eventually periodic in n.  Returns ("witness", n, data) or
    ("impossible", data); data re-validates from scratch.
    """
    level = len(words[0])
    tails = {}
    for i in iter_bits(p_mask):
        u = words[i]
        if not cylinder_is_singleton(sft, u):
            return None
        tails[u] = forced_tail(sft, u)
    targets = {words[i] for i in iter_bits(q_mask)}
    max_pre = max(len(pre) for pre, _ in tails.values())
    joint = 1
    for _, cyc in tails.values():
        joint = lcm(joint, len(cyc))
    window = -(-max_pre // step) + joint // gcd(step, joint)
    data = {
        "kind": "impossible-cylinder-pair",
        "level": level,
        "step": step,
        "source": sorted(tails),
        "target": sorted(targets),
        "points": {u: {"preperiod": pre, "cycle": cyc} for u, (pre, cyc) in tails.items()},
        "window": window,
    }
    for k in range(1, window + 1):
        n = step * k
        fingerprints = {
            eventually_periodic_block(pre, cyc, n, level) for pre, cyc in tails.values()
        }
        if fingerprints == targets:
            return "witness", n, data
    return "impossible", None, data


def vietoris_transitive_bounded(
    sft: ShiftSystem,
    level: int,
    horizon: int | None = None,
    step: int = 1,
) -> Verdict:
    """Transitivity of the induced map over Vietoris basic opens built from
    level-``level`` cylinders, searched up to the horizon.

    For every pair of nonempty cylinder sets (P, Q) the search looks for an n
    (a multiple of ``step``; pass step > 1 to check a power of the induced
    map) such that every cylinder of P reaches some cylinder of Q in exactly
    n shifts and every cylinder of Q is reached.  Proved ships the full
    witness table.  When a pair fails within the budget and every cylinder of
    P is a single point, the condition is decided outright by following the
    eventually periodic image fingerprints; a provably impossible pair yields
    Refuted with a re-validating counterexample.  Any other exhausted pair
    yields Unknown, since the condition is existential over unbounded n.
    """
    if step < 1:
        raise SystemBuildError("step must be positive")
    if horizon is not None and horizon < 1:
        raise SystemBuildError("horizon must be positive")
    words, succ = word_graph(sft, level)
    if not words:
        raise SystemBuildError(f"level {level} yields no allowed words")
    w = len(words)
    if w > MAX_ENUM_WORDS:
        raise BudgetExceededError(
            f"{w} cylinders at level {level} exceed the basic-open enumeration cap"
        )
    budget = horizon if horizon is not None else default_horizon(sft, level)
    mats, _ = _matrix_timeline(succ, step, budget)

    full = (1 << w) - 1
    table: dict[str, int] = {}
    stuck: tuple[int, int] | None = None
    for p in range(1, full + 1):
        for q in range(1, full + 1):
            found = None
            for k, rows, cols in mats:
                if _pair_condition(rows, cols, p, q):
                    found = k * step
                    break
            if found is None:
                decision = _decide_singleton_pair(sft, words, p, q, step)
                if decision is not None and decision[0] == "witness":
                    found = decision[1]
                elif decision is not None:
                    return refuted(METHOD_BOUNDED, decision[2])
                elif stuck is None:
                    stuck = (p, q)
            if found is not None:
                table[f"{_subset_key(words, p)}|{_subset_key(words, q)}"] = found
    if stuck is not None:
        p, q = stuck
        return unknown(
            METHOD_BOUNDED,
            f"no common step count within horizon {budget} (level {level}, step {step}) "
            f"for source={_subset_key(words, p)} target={_subset_key(words, q)}",
        )
    return proved(
        METHOD_BOUNDED,
        {
            "kind": "cylinder-pair-table",
            "level": level,
            "step": step,
            "horizon": budget,
            "pairs": table,
        },
    )


def vietoris_weak_mixing_bounded(
    sft: ShiftSystem, level: int, horizon: int | None = None
) -> Verdict:
    """Bounded check that the product of the induced map with itself is
    transitive over cylinder-built basic opens.

    Two open pairs need a simultaneous step count, so the check intersects
    the per-pair step sets; only the distinct step sets matter.
    """
    words, succ = word_graph(sft, level)
    w = len(words)
    if w > MAX_ENUM_WORDS:
        raise BudgetExceededError(
            f"{w} cylinders at level {level} exceed the basic-open enumeration cap"
        )
    budget = horizon if horizon is not None else default_horizon(sft, level)
    mats, id_seq = _matrix_timeline(succ, 1, budget)

    position_mask = [0] * len(mats)
    for pos, mat_id in enumerate(id_seq, start=1):
        position_mask[mat_id] |= 1 << pos

    full = (1 << w) - 1
    step_sets: set[int] = set()
    for p in range(1, full + 1):
        for q in range(1, full + 1):
            kmask = 0
            for mat_id, (_, rows, cols) in enumerate(mats):
                if _pair_condition(rows, cols, p, q):
                    kmask |= position_mask[mat_id]
            if kmask == 0:
                decision = _decide_singleton_pair(sft, words, p, q, 1)
                if decision is not None and decision[0] == "impossible":
                    return refuted(METHOD_BOUNDED, decision[2])
                return unknown(
                    METHOD_BOUNDED,
                    f"pair source={_subset_key(words, p)} target={_subset_key(words, q)} "
                    f"reached no target within horizon {budget} (level {level})",
                )
            step_sets.add(kmask)
    distinct = sorted(step_sets)
    for i, a in enumerate(distinct):
        for b in distinct[i:]:
            if not a & b:
                return unknown(
                    METHOD_BOUNDED,
                    f"two basic-open pairs share no step count within horizon {budget} "
                    f"(level {level})",
                )
    return proved(
        METHOD_BOUNDED,
        {
            "kind": "pairwise-common-step",
            "level": level,
            "horizon": budget,
            "distinct_step_sets": [sorted(iter_bits(m)) for m in distinct],
        },
    )


# ---------------------------------------------------------------------------
# dense periodic hyperspace points at cylinder level
# ---------------------------------------------------------------------------


def periodic_set_for_profile(sft: ShiftSystem, profile: CylinderProfile) -> PeriodicSetWitness:
    """One periodic point per cylinder of the profile, combined into a single
    hyperspace point fixed by the product of the part periods."""
    profile.validate(sft)
    parts = [find_periodic_point_in_cylinder(sft, u) for u in profile.blocks]
    witness = combine_witnesses(list(parts), sft, mode="product")
    witness.validate_in_cylinders(sft, profile.blocks)
    return witness


def vietoris_periodic_dense_bounded(sft: ShiftSystem, level: int) -> Verdict:
    """Periodic points of the induced map are dense at cylinder granularity.

    Decidable outright: a cylinder contains a periodic point exactly when the
    word graph returns from its end symbol to its start symbol, and an
    invariant family inside a single-cylinder open forces such a return by
    recurrence.  Proved ships, for every basic open built from level-``level``
    cylinders, a periodic hyperspace point with one member per cylinder;
    Refuted ships a cylinder containing no periodic point.
    """
    adj = sft.adjacency
    # reachability must be symmetric, else some word has no return path
    reach = [forward_closure(adj, 1 << i) for i in range(sft.size)]
    for a in range(sft.size):
        for b in iter_bits(reach[a]):
            if not (reach[b] >> a) & 1:
                path = shortest_path(adj, a, b)
                word = "".join(sft.alphabet[i] for i in path)
                return refuted(
                    METHOD_BOUNDED,
                    {
                        "kind": "cylinder-without-periodic",
                        "word": word,
                        "closure": sorted(
                            sft.alphabet[i] for i in iter_bits(reach[b])
                        ),
                    },
                )

    words = allowed_words(sft, level)
    w = len(words)
    if w > MAX_ENUM_WORDS:
        raise BudgetExceededError(
            f"{w} cylinders at level {level} exceed the basic-open enumeration cap"
        )
    per_word = {u: find_periodic_point_in_cylinder(sft, u) for u in words}
    edge_returns = {}
    for a in range(sft.size):
        for b in iter_bits(adj[a]):
            path = shortest_path(adj, b, a)
            edge_returns[f"{sft.alphabet[a]}|{sft.alphabet[b]}"] = "".join(
                sft.alphabet[i] for i in path
            )
    opens = {}
    full = (1 << w) - 1
    for mask in range(1, full + 1):
        blocks = tuple(words[i] for i in iter_bits(mask))
        parts = [per_word[u] for u in blocks]
        witness = combine_witnesses(list(parts), sft, mode="product")
        witness.validate_in_cylinders(sft, blocks)
        opens["+".join(blocks)] = {
            "points": {u: per_word[u][0] for u in blocks},
            "k": witness.k,
        }
    return proved(
        METHOD_BOUNDED,
        {
            "kind": "periodic-set-table",
            "level": level,
            "opens": opens,
            "edge_returns": edge_returns,
        },
    )
