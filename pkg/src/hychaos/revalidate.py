"""Independent re-validation of every witness and counterexample.

Each Proved or Refuted verdict carries a payload that is checked here by
direct evaluation against the system, without consulting the algorithm that
produced it.  Validators recompute orbits, word reachability, and interval
images from scratch; structural payloads (conjunctions, route bundles,
reductions) are validated recursively.

Where a refutation quotes a finite search bound, the validator also checks
that the bound is large enough to be conclusive (first visits of a finite
orbit occur within one sweep of the state space; a cylinder without a return
path never regains one; and so on).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .metric import iter_bits
from .systems import (
    FiniteSystem,
    Interval,
    IntervalUnion,
    PLSystem,
    ShiftSystem,
    UNIT_UNION,
    allowed_words,
    dyadic_cells,
    eventually_periodic_block,
    pl_eval,
    pl_image_of_union,
)
from .verdicts import PROVED, REFUTED, UNKNOWN, Verdict
from .witnesses import primitive_root


class RevalidationError(AssertionError):
    """A certificate failed its independent re-check."""


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise RevalidationError(message)


# ---------------------------------------------------------------------------
# finite-system helpers
# ---------------------------------------------------------------------------


def _pt(sys: FiniteSystem, label: str) -> int:
    return sys.space.index(label)


def _mask(sys: FiniteSystem, labels) -> int:
    mask = 0
    for label in labels:
        mask |= 1 << _pt(sys, label)
    return mask


def _iterate_mask(sys: FiniteSystem, mask: int, steps: int) -> int:
    for _ in range(steps):
        mask = sys.image_mask(mask)
    return mask


def _parse_pair_key(key: str) -> tuple[str, str]:
    left, right = key.split("|")
    return left, right


# ---------------------------------------------------------------------------
# finite-system validators
# ---------------------------------------------------------------------------


def _v_reach_table(sys: FiniteSystem, payload: dict) -> None:
    steps = payload["steps"]
    pts = sys.space.points
    seen = set()
    for key, n in steps.items():
        x, y = _parse_pair_key(key)
        _need(1 <= n, "step counts must be positive")
        _need(sys.iterate_point(_pt(sys, x), n) == _pt(sys, y), f"pair {key} wrong")
        seen.add((x, y))
    _need(
        seen == {(a, b) for a in pts for b in pts},
        "reach table must cover every ordered point pair",
    )


def _v_unreachable_pair(sys: FiniteSystem, payload: dict) -> None:
    x = _pt(sys, payload["from"])
    y = _pt(sys, payload["to"])
    cur = x
    for _ in range(sys.size):
        cur = sys.map_table[cur]
        _need(cur != y, "target is reachable after all")


def _v_power_unreachable(sys: FiniteSystem, payload: dict) -> None:
    power = payload["power"]
    _need(power >= 1, "power must be positive")
    x = _pt(sys, payload["from"])
    y = _pt(sys, payload["to"])
    cur = x
    for _ in range(sys.size):
        cur = sys.iterate_point(cur, power)
        _need(cur != y, "target is reachable under the power after all")


def _v_singleton_space(sys: FiniteSystem, payload: dict) -> None:
    _need(sys.size == 1, "claim holds only on a one-point space")


def _v_product_unreachable(sys: FiniteSystem, payload: dict) -> None:
    x1, x2 = (_pt(sys, p) for p in payload["from"])
    y1, y2 = (_pt(sys, p) for p in payload["to"])
    c1, c2 = x1, x2
    for _ in range(sys.size * sys.size):
        c1 = sys.map_table[c1]
        c2 = sys.map_table[c2]
        _need((c1, c2) != (y1, y2), "product pair is reachable after all")


def _v_periodic_points(sys: FiniteSystem, payload: dict) -> None:
    periods = payload["periods"]
    _need(set(periods) == set(sys.space.points), "every point needs a period")
    for label, p in periods.items():
        x = _pt(sys, label)
        _need(p >= 1 and sys.iterate_point(x, p) == x, f"period of {label} wrong")
        for smaller in range(1, p):
            _need(sys.iterate_point(x, smaller) != x, f"period of {label} not least")


def _v_aperiodic_point(sys: FiniteSystem, payload: dict) -> None:
    x = _pt(sys, payload["point"])
    cur = x
    for _ in range(sys.size):
        cur = sys.map_table[cur]
        _need(cur != x, "point is periodic after all")


def _v_small_periodic_in_cells(sys: FiniteSystem, payload: dict) -> None:
    cells = payload["cells"]
    _need(set(cells) == set(sys.space.points), "every singleton open needs a witness")
    for label, entry in cells.items():
        cell = _mask(sys, [label])
        y = _mask(sys, entry["set"])
        k = entry["k"]
        _need(y and not (y & ~cell), "witness set must sit inside its cell")
        _need(k >= 1, "k must be positive")
        _need(not (_iterate_mask(sys, y, k) & ~y), "set not invariant under iterate")


def _v_cell_without_invariant(sys: FiniteSystem, payload: dict) -> None:
    _need(payload["k_bound"] >= sys.size, "bound below the sound minimum")
    x = _pt(sys, payload["cell"])
    cur = x
    for _ in range(payload["k_bound"]):
        cur = sys.map_table[cur]
        _need(cur != x, "cell contains an invariant singleton after all")


def _v_cover_table(sys: FiniteSystem, payload: dict) -> None:
    steps = payload["steps"]
    full = (1 << sys.size) - 1
    expected = set()
    for mask in range(1, full + 1):
        expected.add(",".join(sys.space.points[i] for i in iter_bits(mask)))
    _need(set(steps) == expected, "cover table must include every nonempty subset")
    for key, n in steps.items():
        u = _mask(sys, key.split(","))
        _need(n >= 1 and _iterate_mask(sys, u, n) == full, f"subset {key} fails")


def _v_never_covers(sys: FiniteSystem, payload: dict) -> None:
    full = (1 << sys.size) - 1
    u = _mask(sys, payload["set"])
    seen = set()
    while u not in seen:
        seen.add(u)
        u = sys.image_mask(u)
        _need(u != full, "subset covers the space after all")


def _v_unreachable_open_pair(sys: FiniteSystem, payload: dict) -> None:
    _need(payload["bound"] >= sys.size, "bound below the sound minimum")
    u = _mask(sys, payload["source"])
    v = _mask(sys, payload["target"])
    cur = u
    for _ in range(payload["bound"]):
        cur = sys.image_mask(cur)
        _need(not (cur & v), "opens meet after all")


def _v_power_unreachable_open(sys: FiniteSystem, payload: dict) -> None:
    _need(payload["bound"] >= sys.size, "bound below the sound minimum")
    power = payload["power"]
    u = _mask(sys, payload["source"])
    v = _mask(sys, payload["target"])
    cur = u
    for _ in range(payload["bound"]):
        cur = _iterate_mask(sys, cur, power)
        _need(not (cur & v), "opens meet under the power after all")


def _v_open_reach_table(sys: FiniteSystem, payload: dict) -> None:
    steps = payload["steps"]
    full = (1 << sys.size) - 1
    _need(len(steps) == (full) * (full), "table must cover every open pair")
    for key, n in steps.items():
        left, right = _parse_pair_key(key)
        u = _mask(sys, left.split(","))
        v = _mask(sys, right.split(","))
        _need(n >= 1 and (_iterate_mask(sys, u, n) & v) != 0, f"pair {key} fails")


def _v_open_power_tables(sys: FiniteSystem, payload: dict) -> None:
    for power, table in payload["tables"].items():
        p = int(power)
        full = (1 << sys.size) - 1
        _need(len(table) == full * full, "each power table must cover every pair")
        for key, n in table.items():
            left, right = _parse_pair_key(key)
            u = _mask(sys, left.split(","))
            v = _mask(sys, right.split(","))
            _need(
                n >= 1 and (_iterate_mask(sys, u, n * p) & v) != 0,
                f"power {p} pair {key} fails",
            )


def _open_step_mask(sys: FiniteSystem, u: int, v: int, bound: int) -> int:
    mask = 0
    cur = u
    for j in range(1, bound + 1):
        cur = sys.image_mask(cur)
        if cur & v:
            mask |= 1 << j
    return mask


def _v_no_common_step(sys: FiniteSystem, payload: dict) -> None:
    _need(payload["bound"] >= sys.size * sys.size, "bound below the sound minimum")
    u1 = _mask(sys, payload["first"][0])
    v1 = _mask(sys, payload["first"][1])
    u2 = _mask(sys, payload["second"][0])
    v2 = _mask(sys, payload["second"][1])
    m1 = _open_step_mask(sys, u1, v1, payload["bound"])
    m2 = _open_step_mask(sys, u2, v2, payload["bound"])
    _need(not (m1 & m2), "the two open pairs share a step count after all")


def _v_pairwise_common_step_opens(sys: FiniteSystem, payload: dict) -> None:
    bound = payload["bound"]
    _need(bound >= sys.size * sys.size, "bound below the sound minimum")
    full = (1 << sys.size) - 1
    masks = set()
    for u in range(1, full + 1):
        for v in range(1, full + 1):
            mask = _open_step_mask(sys, u, v, bound)
            _need(mask != 0, "some open pair never meets")
            masks.add(mask)
    recorded = {sum(1 << j for j in steps) for steps in payload["distinct_step_sets"]}
    _need(masks == recorded, "recorded step sets do not match recomputation")
    ordered = sorted(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            _need(a & b != 0, "two step sets are disjoint")


def _v_open_without_periodic(sys: FiniteSystem, payload: dict) -> None:
    _need(payload["bound"] >= sys.size, "bound below the sound minimum")
    for label in payload["set"]:
        x = _pt(sys, label)
        cur = x
        for _ in range(payload["bound"]):
            cur = sys.map_table[cur]
            _need(cur != x, "open contains a periodic point after all")


def _v_open_without_invariant(sys: FiniteSystem, payload: dict) -> None:
    _need(payload["k_bound"] >= sys.size, "bound below the sound minimum")
    u = _mask(sys, payload["set"])
    sub = u & -u
    while True:
        image = sub
        for _ in range(payload["k_bound"]):
            image = sys.image_mask(image)
            _need(image & ~sub, "open contains an invariant subset after all")
        if sub == u:
            break
        sub = (sub - u) & u


def _v_small_periodic_in_opens(sys: FiniteSystem, payload: dict) -> None:
    full = (1 << sys.size) - 1
    expected = {
        ",".join(sys.space.points[i] for i in iter_bits(mask))
        for mask in range(1, full + 1)
    }
    _need(set(payload["cells"]) == expected, "every open needs a witness")
    for key, entry in payload["cells"].items():
        u = _mask(sys, key.split(","))
        y = _mask(sys, entry["set"])
        k = entry["k"]
        _need(y and not (y & ~u), "witness escapes its open")
        _need(k >= 1 and not (_iterate_mask(sys, y, k) & ~y), "witness not invariant")


def _v_never_covers_bounded(sys: FiniteSystem, payload: dict) -> None:
    # any horizon >= 1 is conclusive here: a subset that ever covers the
    # space forces the map to be a permutation and the subset to be the whole
    # space, which covers at step 1 already
    _need(payload["horizon"] >= 1, "horizon must be positive")
    u = _mask(sys, payload["set"])
    full = (1 << sys.size) - 1
    cur = u
    for _ in range(payload["horizon"]):
        cur = sys.image_mask(cur)
        _need(cur != full, "subset covers the space after all")


# ---------------------------------------------------------------------------
# shift helpers (local word-level reachability, independent of the producers)
# ---------------------------------------------------------------------------


def _word_successors(sft: ShiftSystem, words: tuple[str, ...]) -> tuple[int, ...]:
    index = {w: i for i, w in enumerate(words)}
    succ = []
    for w in words:
        mask = 0
        for j in iter_bits(sft.adjacency[sft.symbol_index(w[-1])]):
            mask |= 1 << index[w[1:] + sft.alphabet[j]]
        succ.append(mask)
    return tuple(succ)


def _or_rows(succ: tuple[int, ...], row: int) -> int:
    out = 0
    for i in iter_bits(row):
        out |= succ[i]
    return out


def _exact_symbol_reach(sft: ShiftSystem, start: int, steps: int) -> int:
    frontier = 1 << start
    for _ in range(steps):
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= sft.adjacency[i]
        frontier = nxt
    return frontier


def _v_symbol_path_table(sft: ShiftSystem, payload: dict) -> None:
    paths = payload["paths"]
    expected = {f"{a}|{b}" for a in sft.alphabet for b in sft.alphabet}
    _need(set(paths) == expected, "a path is needed for every ordered symbol pair")
    for key, word in paths.items():
        a, b = _parse_pair_key(key)
        _need(len(word) >= 2, "paths must use at least one edge")
        _need(word[0] == a and word[-1] == b, f"path endpoints wrong for {key}")
        _need(sft.word_allowed(word), f"path for {key} is not an allowed word")


def _v_unreachable_symbols(sft: ShiftSystem, payload: dict) -> None:
    src = sft.symbol_index(payload["from"])
    dst = payload["to"]
    closure = {sft.symbol_index(s) for s in payload["closure"]}
    _need(sft.symbol_index(dst) not in closure, "closure contains the target")
    out_of_src = set(iter_bits(sft.adjacency[src]))
    _need(out_of_src <= closure, "closure misses a successor of the source")
    for s in closure:
        _need(
            set(iter_bits(sft.adjacency[s])) <= closure,
            "closure is not closed under transitions",
        )


def _v_positive_power(sft: ShiftSystem, payload: dict) -> None:
    exponent = payload["exponent"]
    _need(exponent >= 1, "exponent must be positive")
    full = (1 << sft.size) - 1
    for a in range(sft.size):
        _need(
            _exact_symbol_reach(sft, a, exponent) == full,
            "some symbol does not reach every symbol at the exponent",
        )
    for level, entries in payload.get("cylinder_coverage", {}).items():
        lvl = int(level)
        for u, n in entries.items():
            _need(sft.word_allowed(u), f"coverage word {u!r} not allowed")
            steps = n - (lvl - 1)
            _need(steps >= 1, "coverage step count too small")
            _need(
                _exact_symbol_reach(sft, sft.symbol_index(u[-1]), steps) == full,
                f"cylinder {u!r} does not cover the space at its stated step",
            )


def _v_cyclic_partition(sft: ShiftSystem, payload: dict) -> None:
    period = payload["period"]
    classes = payload["classes"]
    _need(period >= 2 and len(classes) == period, "need at least two cyclic classes")
    position = {}
    for idx, group in enumerate(classes):
        for symbol in group:
            _need(symbol not in position, "classes overlap")
            position[symbol] = idx
    _need(set(position) == set(sft.alphabet), "classes must partition the alphabet")
    for a in range(sft.size):
        for b in iter_bits(sft.adjacency[a]):
            _need(
                position[sft.alphabet[b]]
                == (position[sft.alphabet[a]] + 1) % period,
                "an edge does not advance the cyclic class by one",
            )


def _v_periodic_in_cylinders(sft: ShiftSystem, payload: dict) -> None:
    level = payload["level"]
    cells = payload["cells"]
    _need(set(cells) == set(allowed_words(sft, level)), "every cylinder needs a point")
    for u, word in cells.items():
        _need(sft.word_allowed_cyclic(word), f"point word {word!r} is not a cycle")
        reps = -(-level // len(word))
        _need((word * reps)[:level] == u, f"point does not start in cylinder {u!r}")
    _validate_edge_returns(sft, payload["edge_returns"])


def _validate_edge_returns(sft: ShiftSystem, returns: dict) -> None:
    expected = set()
    for a in range(sft.size):
        for b in iter_bits(sft.adjacency[a]):
            expected.add(f"{sft.alphabet[a]}|{sft.alphabet[b]}")
    _need(set(returns) == expected, "a return path is needed for every edge")
    for key, word in returns.items():
        a, b = _parse_pair_key(key)
        _need(len(word) >= 2, "return paths must use at least one edge")
        _need(word[0] == b and word[-1] == a, f"return endpoints wrong for {key}")
        _need(sft.word_allowed(word), f"return path for {key} not allowed")


def _v_small_periodic_in_cylinders(sft: ShiftSystem, payload: dict) -> None:
    level = payload["level"]
    cells = payload["cells"]
    _need(set(cells) == set(allowed_words(sft, level)), "every cylinder needs a witness")
    for u, entry in cells.items():
        word, k = entry["point"], entry["k"]
        _need(sft.word_allowed_cyclic(word), f"witness word {word!r} is not a cycle")
        reps = -(-level // len(word))
        _need((word * reps)[:level] == u, f"witness escapes cylinder {u!r}")
        _need(k >= 1 and k % len(primitive_root(word)) == 0, "k does not fix the point")
    _validate_edge_returns(sft, payload["edge_returns"])


def _v_cylinder_without_periodic(sft: ShiftSystem, payload: dict) -> None:
    word = payload["word"]
    _need(sft.word_allowed(word), "counterexample word must be allowed")
    closure = {sft.symbol_index(s) for s in payload["closure"]}
    last = sft.symbol_index(word[-1])
    first = sft.symbol_index(word[0])
    _need(first not in closure, "closure contains the start symbol")
    _need(set(iter_bits(sft.adjacency[last])) <= closure, "closure misses a successor")
    for s in closure:
        _need(
            set(iter_bits(sft.adjacency[s])) <= closure,
            "closure is not closed under transitions",
        )


def _v_cylinder_pair_table(sft: ShiftSystem, payload: dict) -> None:
    level = payload["level"]
    step = payload.get("step", 1)
    words = allowed_words(sft, level)
    index = {w: i for i, w in enumerate(words)}
    succ = _word_successors(sft, words)
    full = (1 << len(words)) - 1
    pairs = payload["pairs"]
    expected = set()
    for p in range(1, full + 1):
        for q in range(1, full + 1):
            expected.add(
                "+".join(words[i] for i in iter_bits(p))
                + "|"
                + "+".join(words[i] for i in iter_bits(q))
            )
    _need(set(pairs) == expected, "pair table must cover every basic-open pair")

    matrices: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}

    def matrix(n: int):
        if n not in matrices:
            rows = succ
            for _ in range(n - 1):
                rows = tuple(_or_rows(succ, row) for row in rows)
            cols = [0] * len(words)
            for i, row in enumerate(rows):
                for j in iter_bits(row):
                    cols[j] |= 1 << i
            matrices[n] = (rows, tuple(cols))
        return matrices[n]

    for key, n in pairs.items():
        left, right = _parse_pair_key(key)
        p = sum(1 << index[w] for w in left.split("+"))
        q = sum(1 << index[w] for w in right.split("+"))
        _need(n >= 1 and n % step == 0, f"step count for {key} not a multiple")
        rows, cols = matrix(n)
        _need(
            all(rows[u] & q for u in iter_bits(p))
            and all(cols[v] & p for v in iter_bits(q)),
            f"pair {key} fails at its stated step count",
        )


def _v_power_pair_tables(sft: ShiftSystem, payload: dict) -> None:
    for power, table in payload["tables"].items():
        _v_cylinder_pair_table(sft, table)
        _need(table.get("step", 1) == int(power), "power and step disagree")


def _v_pairwise_common_step(sft: ShiftSystem, payload: dict) -> None:
    level = payload["level"]
    horizon = payload["horizon"]
    words = allowed_words(sft, level)
    succ = _word_successors(sft, words)
    full = (1 << len(words)) - 1
    masks = set()
    rows = succ
    per_n = []
    for _ in range(horizon):
        cols = [0] * len(words)
        for i, row in enumerate(rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        per_n.append((rows, tuple(cols)))
        rows = tuple(_or_rows(succ, row) for row in rows)
    for p in range(1, full + 1):
        for q in range(1, full + 1):
            mask = 0
            for n0, (r, c) in enumerate(per_n, start=1):
                if all(r[u] & q for u in iter_bits(p)) and all(
                    c[v] & p for v in iter_bits(q)
                ):
                    mask |= 1 << n0
            _need(mask != 0, "a basic-open pair never meets within the horizon")
            masks.add(mask)
    recorded = {sum(1 << j for j in steps) for steps in payload["distinct_step_sets"]}
    _need(masks == recorded, "recorded step sets do not match recomputation")
    ordered = sorted(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            _need(a & b != 0, "two step sets are disjoint")


def _v_impossible_cylinder_pair(sft: ShiftSystem, payload: dict) -> None:
    level = payload["level"]
    step = payload.get("step", 1)
    source = payload["source"]
    target = set(payload["target"])
    points = payload["points"]
    _need(set(points) == set(source), "every source cylinder needs its point")
    for v in target:
        _need(len(v) == level and sft.word_allowed(v), f"target word {v!r} malformed")
    max_pre = 0
    joint = 1
    for u, entry in points.items():
        pre, cyc = entry["preperiod"], entry["cycle"]
        _need(len(u) == level and sft.word_allowed(u), f"source word {u!r} malformed")
        _need(len(cyc) >= 1, "cycle part must be nonempty")
        # every symbol reachable from the end of u must be forced, so the
        # cylinder holds a single point; an allowed sequence starting with u
        # is then unique, and (pre, cyc) passing the checks below is that point
        reach = {sft.symbol_index(u[-1])}
        frontier = set(reach)
        while frontier:
            nxt = set()
            for s in frontier:
                _need(sft.adjacency[s].bit_count() == 1, "cylinder is not a single point")
                nxt |= set(iter_bits(sft.adjacency[s]))
            frontier = nxt - reach
            reach |= nxt
        _need(
            eventually_periodic_block(pre, cyc, 0, len(u)) == u,
            "point does not start with its cylinder word",
        )
        _need(sft.word_allowed(pre + cyc + cyc), "point word not allowed")
        max_pre = max(max_pre, len(pre))
        joint = lcm(joint, len(cyc))
    window = -(-max_pre // step) + joint // gcd(step, joint)
    _need(payload["window"] >= window, "recorded window below the sound minimum")
    for k in range(1, payload["window"] + 1):
        n = step * k
        fingerprints = {
            eventually_periodic_block(points[u]["preperiod"], points[u]["cycle"], n, level)
            for u in source
        }
        _need(fingerprints != target, "a step count satisfies the pair after all")


def _v_power_transitivity_failure(sft: ShiftSystem, payload: dict) -> None:
    inner = payload["counterexample"]
    _need(inner.get("kind") == "impossible-cylinder-pair", "unexpected inner kind")
    _need(inner.get("step", 1) == payload["power"], "power and inner step disagree")
    _v_impossible_cylinder_pair(sft, inner)


def _v_periodic_set_table(sft: ShiftSystem, payload: dict) -> None:
    level = payload["level"]
    words = allowed_words(sft, level)
    opens = payload["opens"]
    expected = set()
    full = (1 << len(words)) - 1
    for mask in range(1, full + 1):
        expected.add("+".join(words[i] for i in iter_bits(mask)))
    _need(set(opens) == expected, "every basic open needs a periodic set")
    for key, entry in opens.items():
        blocks = key.split("+")
        k = entry["k"]
        product = 1
        prefixes = set()
        for u in blocks:
            word = entry["points"][u]
            _need(sft.word_allowed_cyclic(word), f"point {word!r} is not a cycle")
            reps = -(-level // len(word))
            _need((word * reps)[:level] == u, f"point escapes cylinder {u!r}")
            product *= len(word)
            prefixes.add(u)
        _need(k == product, "exponent must be the product of the part periods")
        _need(prefixes == set(blocks), "points must meet every cylinder")
    _validate_edge_returns(sft, payload["edge_returns"])


# ---------------------------------------------------------------------------
# piecewise-linear validators
# ---------------------------------------------------------------------------


def _cell(depth: int, index: int) -> Interval:
    return dyadic_cells(depth)[index]


def _image_at(f: PLSystem, cell: Interval, steps: int) -> IntervalUnion:
    image = IntervalUnion.of([cell])
    for _ in range(steps):
        image = pl_image_of_union(f, image)
    return image


def _v_cover_reach_table(f: PLSystem, payload: dict) -> None:
    depth = payload["depth"]
    cells = dyadic_cells(depth)
    pairs = payload["pairs"]
    power = payload.get("power", 1)
    expected = {f"{i}|{j}" for i in range(len(cells)) for j in range(len(cells))}
    _need(set(pairs) == expected, "pair table must cover every cell pair")
    cache: dict[tuple[int, int], IntervalUnion] = {}
    for key, n in pairs.items():
        i, j = (int(part) for part in _parse_pair_key(key))
        steps = n * power
        if (i, steps) not in cache:
            cache[(i, steps)] = _image_at(f, cells[i], steps)
        _need(n >= 1 and cache[(i, steps)].intersects(cells[j]), f"pair {key} fails")


def _v_power_cover_tables(f: PLSystem, payload: dict) -> None:
    for power, pairs in payload["tables"].items():
        _v_cover_reach_table(
            f,
            {
                "depth": payload["depth"],
                "pairs": pairs,
                "power": int(power),
            },
        )


def _v_pairwise_common_step_cover(f: PLSystem, payload: dict) -> None:
    depth = payload["depth"]
    horizon = payload["horizon"]
    cells = dyadic_cells(depth)
    masks = set()
    for i, cell in enumerate(cells):
        image = IntervalUnion.of([cell])
        per_target = [0] * len(cells)
        for n in range(1, horizon + 1):
            image = pl_image_of_union(f, image)
            for j, target in enumerate(cells):
                if image.intersects(target):
                    per_target[j] |= 1 << n
        for mask in per_target:
            _need(mask != 0, "a cover-cell pair never meets within the horizon")
            masks.add(mask)
    recorded = {sum(1 << j for j in steps) for steps in payload["distinct_step_sets"]}
    _need(masks == recorded, "recorded step sets do not match recomputation")
    ordered = sorted(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            _need(a & b != 0, "two step sets are disjoint")


def _v_periodic_in_cover(f: PLSystem, payload: dict) -> None:
    depth = payload["depth"]
    cells = payload["cells"]
    _need(set(cells) == {str(i) for i in range(1 << depth)}, "every cell needs a point")
    for key, entry in cells.items():
        cell = _cell(depth, int(key))
        point = Fraction(entry["point"])
        period = entry["period"]
        _need(cell.contains(point), "point escapes its cell")
        _need(period >= 1, "period must be positive")
        cur = point
        for _ in range(period):
            cur = pl_eval(f, cur)
        _need(cur == point, "point is not fixed by the stated iterate")


def _v_small_periodic_in_cover(f: PLSystem, payload: dict) -> None:
    depth = payload["depth"]
    cells = payload["cells"]
    _need(set(cells) == {str(i) for i in range(1 << depth)}, "every cell needs a witness")
    for key, entry in cells.items():
        cell = _cell(depth, int(key))
        points = [Fraction(p) for p in entry["set"]]
        k = entry["k"]
        _need(points and k >= 1, "witness must be nonempty with positive k")
        for point in points:
            _need(cell.contains(point), "witness escapes its cell")
            cur = point
            for _ in range(k):
                cur = pl_eval(f, cur)
            _need(cur in points, "witness set not invariant under the iterate")


def _v_cover_exact_table(f: PLSystem, payload: dict) -> None:
    depth = payload["depth"]
    cells = payload["cells"]
    _need(set(cells) == {str(i) for i in range(1 << depth)}, "every cell needs a step")
    for key, n in cells.items():
        cell = _cell(depth, int(key))
        _need(n >= 1 and _image_at(f, cell, n) == UNIT_UNION, f"cell {key} fails")


# ---------------------------------------------------------------------------
# structural validators and dispatch
# ---------------------------------------------------------------------------


def _v_conjunction(sys, payload: dict, status: str) -> None:
    parts = {name: Verdict.from_dict(data) for name, data in payload["parts"].items()}
    for part in parts.values():
        revalidate_verdict(sys, part)
    if status == PROVED:
        _need(all(p.status == PROVED for p in parts.values()), "a component is not proved")
    else:
        failed = payload["failed"]
        _need(parts[failed].status == REFUTED, "the named component is not refuted")


def _v_multi_route(sys, payload: dict, status: str) -> None:
    routes = {name: Verdict.from_dict(data) for name, data in payload["routes"].items()}
    scopes = payload["scopes"]
    for route in routes.values():
        revalidate_verdict(sys, route)
    if status == PROVED:
        _need(
            any(
                v.status == PROVED and scopes[name] == "full"
                for name, v in routes.items()
            ),
            "no full-scope route proves the claim",
        )
        _need(
            all(v.status != REFUTED for v in routes.values()),
            "a refuting route coexists with the proof",
        )
    else:
        _need(any(v.status == REFUTED for v in routes.values()), "no route refutes")
        _need(
            not any(
                v.status == PROVED and scopes[name] == "full"
                for name, v in routes.items()
            ),
            "a full-scope proof coexists with the refutation",
        )


def _v_reduced(sys, payload: dict, status: str) -> None:
    premise = Verdict.from_dict(payload["premise"])
    _need(premise.status == status, "premise status does not transport")
    revalidate_verdict(sys, premise)


_FINITE_VALIDATORS = {
    "reach-table": _v_reach_table,
    "unreachable-pair": _v_unreachable_pair,
    "power-unreachable": _v_power_unreachable,
    "singleton-space": _v_singleton_space,
    "product-unreachable": _v_product_unreachable,
    "periodic-points": _v_periodic_points,
    "aperiodic-point": _v_aperiodic_point,
    "small-periodic-in-cells": _v_small_periodic_in_cells,
    "cell-without-invariant": _v_cell_without_invariant,
    "cover-table": _v_cover_table,
    "never-covers": _v_never_covers,
    "unreachable-open-pair": _v_unreachable_open_pair,
    "power-unreachable-open": _v_power_unreachable_open,
    "open-reach-table": _v_open_reach_table,
    "open-power-tables": _v_open_power_tables,
    "no-common-step": _v_no_common_step,
    "pairwise-common-step-opens": _v_pairwise_common_step_opens,
    "open-without-periodic": _v_open_without_periodic,
    "open-without-invariant": _v_open_without_invariant,
    "small-periodic-in-opens": _v_small_periodic_in_opens,
    "never-covers-bounded": _v_never_covers_bounded,
}

_SHIFT_VALIDATORS = {
    "symbol-path-table": _v_symbol_path_table,
    "unreachable-symbols": _v_unreachable_symbols,
    "positive-power": _v_positive_power,
    "cyclic-partition": _v_cyclic_partition,
    "periodic-in-cylinders": _v_periodic_in_cylinders,
    "small-periodic-in-cylinders": _v_small_periodic_in_cylinders,
    "cylinder-without-periodic": _v_cylinder_without_periodic,
    "cylinder-pair-table": _v_cylinder_pair_table,
    "power-pair-tables": _v_power_pair_tables,
    "pairwise-common-step": _v_pairwise_common_step,
    "impossible-cylinder-pair": _v_impossible_cylinder_pair,
    "power-transitivity-failure": _v_power_transitivity_failure,
    "periodic-set-table": _v_periodic_set_table,
}

_PL_VALIDATORS = {
    "cover-reach-table": _v_cover_reach_table,
    "power-cover-tables": _v_power_cover_tables,
    "pairwise-common-step-cover": _v_pairwise_common_step_cover,
    "periodic-in-cover": _v_periodic_in_cover,
    "small-periodic-in-cover": _v_small_periodic_in_cover,
    "cover-exact-table": _v_cover_exact_table,
}


def revalidate_verdict(sys, verdict: Verdict) -> bool:
    """Check a verdict's certificate against the system by direct evaluation.

    Unknown verdicts carry no claim and pass trivially.  Raises
    :class:`RevalidationError` when a certificate does not hold.
    """
    if verdict.status == UNKNOWN:
        return True
    payload = verdict.payload()
    kind = payload.get("kind")
    if kind == "conjunction":
        _v_conjunction(sys, payload, verdict.status)
        return True
    if kind == "multi-route":
        _v_multi_route(sys, payload, verdict.status)
        return True
    if kind == "reduced":
        _v_reduced(sys, payload, verdict.status)
        return True
    if isinstance(sys, FiniteSystem) and kind in _FINITE_VALIDATORS:
        _FINITE_VALIDATORS[kind](sys, payload)
        return True
    if isinstance(sys, ShiftSystem) and kind in _SHIFT_VALIDATORS:
        _SHIFT_VALIDATORS[kind](sys, payload)
        return True
    if isinstance(sys, PLSystem) and kind in _PL_VALIDATORS:
        _PL_VALIDATORS[kind](sys, payload)
        return True
    raise RevalidationError(f"no validator for payload kind {kind!r} on {type(sys).__name__}")


def revalidate_report(sys, report) -> bool:
    """Re-validate every condition of an equivalence report.

    Hyperspace-side conditions of a finite system are validated against the
    materialised hyperspace; shift and interval conditions are expressed in
    base terms already.
    """
    from .hyperspace import powerset_hyperspace

    conditions = (
        report.conditions
        if hasattr(report, "conditions")
        else [(c["name"], Verdict.from_dict(c["verdict"])) for c in report["conditions"]]
    )
    hyper_finite = None
    for name, verdict in conditions:
        target = sys
        if isinstance(sys, FiniteSystem) and "(hyperspace)" in name:
            if hyper_finite is None:
                hyper_finite = powerset_hyperspace(sys).as_finite_system()
            target = hyper_finite
        revalidate_verdict(target, verdict)
    return True
