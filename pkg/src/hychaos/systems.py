"""The concrete system families every checker runs on.

Three families:

* ``FiniteSystem``   -- a finite metric space with a total self-map; fully
  enumerable, all properties decidable by exhaustion.
* ``ShiftSystem``    -- a one-sided vertex shift given by a 0/1 transition
  matrix; the space is typically infinite but the checkers stay decidable
  through the transition graph.
* ``PLSystem``       -- a continuous piecewise-linear self-map of [0,1] with
  rational breakpoints, certified at a chosen dyadic resolution via exact
  interval images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import forward_closure, out_masks
from .metric import FinitePointSpace, iter_bits, _as_fraction


class SystemBuildError(ValueError):
    """A system definition fails its construction contract."""


# ---------------------------------------------------------------------------
# finite systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSystem:
    """A total self-map of a finite metric space.

    Continuity is automatic on a discrete space, so the only invariant is
    totality of the map table.
    """

    space: FinitePointSpace
    map_table: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.space.size

    def apply(self, i: int) -> int:
        return self.map_table[i]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.map_table[i]
        return out

    def iterate_point(self, i: int, steps: int) -> int:
        for _ in range(steps):
            i = self.map_table[i]
        return i


def make_finite_system(space: FinitePointSpace, map_table) -> FiniteSystem:
    table = tuple(map_table)
    n = space.size
    if len(table) != n:
        raise SystemBuildError(
            f"map table has {len(table)} entries for a {n}-point space"
        )
    for i, target in enumerate(table):
        if not isinstance(target, int) or not (0 <= target < n):
            raise SystemBuildError(
                f"map entry {space.points[i]} -> index {target} is out of range"
            )
    return FiniteSystem(space, table)


def product_map(sys: FiniteSystem) -> tuple[int, ...]:
    """Map table of the product system on pairs, indexed i*n + j."""
    n = sys.size
    return tuple(
        sys.map_table[i] * n + sys.map_table[j] for i in range(n) for j in range(n)
    )


# ---------------------------------------------------------------------------
# vertex shifts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftSystem:
    """One-sided vertex shift of finite type.

    ``transition[i][j] == 1`` allows symbol j to follow symbol i.  The
    presentation is essential: every symbol has in-degree and out-degree at
    least one (non-essential symbols are removed at construction and recorded
    in ``trimmed``).
    """

    alphabet: tuple[str, ...]
    transition: tuple[tuple[int, ...], ...]
    trimmed: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def adjacency(self) -> tuple[int, ...]:
        return out_masks(self.transition)

    def symbol_index(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise SystemBuildError(f"unknown symbol {symbol!r}") from None

    def allows(self, a: str, b: str) -> bool:
        return bool(self.transition[self.symbol_index(a)][self.symbol_index(b)])

    def word_allowed(self, word: str) -> bool:
        if not word:
            return False
        idx = [self.symbol_index(c) for c in word]
        return all(self.transition[a][b] for a, b in zip(idx, idx[1:]))

    def word_allowed_cyclic(self, word: str) -> bool:
        """Allowed as a cycle: every transition of word + wrap-around."""
        return self.word_allowed(word) and self.allows(word[-1], word[0])

    def space_is_infinite(self) -> bool:
        """An essential shift space is infinite exactly when some symbol
        admits two continuations."""
        return any(row.bit_count() >= 2 for row in self.adjacency)

    def out_degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()


def make_shift_system(alphabet, transition) -> ShiftSystem:
    symbols = tuple(str(s) for s in alphabet)
    if not symbols:
        raise SystemBuildError("alphabet must be nonempty")
    if len(set(symbols)) != len(symbols):
        raise SystemBuildError("alphabet symbols must be distinct")
    for s in symbols:
        if len(s) != 1:
            raise SystemBuildError("alphabet symbols must be single characters")
    rows = [tuple(int(bool(v)) for v in row) for row in transition]
    if len(rows) != len(symbols) or any(len(r) != len(symbols) for r in rows):
        raise SystemBuildError("transition matrix must be square over the alphabet")

    # iteratively delete symbols with zero in- or out-degree
    alive = list(range(len(symbols)))
    while True:
        dead = [
            i
            for i in alive
            if not any(rows[i][j] for j in alive) or not any(rows[j][i] for j in alive)
        ]
        if not dead:
            break
        alive = [i for i in alive if i not in dead]
    if not alive:
        raise SystemBuildError("shift space is empty after trimming")
    trimmed = tuple(symbols[i] for i in range(len(symbols)) if i not in alive)
    kept = tuple(symbols[i] for i in alive)
    matrix = tuple(tuple(rows[i][j] for j in alive) for i in alive)
    return ShiftSystem(kept, matrix, trimmed)


def allowed_words(sft: ShiftSystem, length: int) -> tuple[str, ...]:
    """All allowed words of the given length, sorted lexicographically by
    alphabet order.  These index the cylinders at that level."""
    if length < 1:
        raise SystemBuildError("word length must be at least 1")
    words = [(i,) for i in range(sft.size)]
    for _ in range(length - 1):
        words = [
            w + (j,)
            for w in words
            for j in range(sft.size)
            if sft.transition[w[-1]][j]
        ]
    return tuple("".join(sft.alphabet[i] for i in w) for w in words)


def cylinder_is_singleton(sft: ShiftSystem, word: str) -> bool:
    """True when the cylinder of ``word`` contains exactly one sequence:
    every symbol reachable from the final symbol has a forced continuation."""
    if not sft.word_allowed(word):
        raise SystemBuildError(f"word {word!r} is not allowed")
    adj = sft.adjacency
    last = sft.symbol_index(word[-1])
    reach = forward_closure(adj, 1 << last) | (1 << last)
    return all(adj[i].bit_count() == 1 for i in iter_bits(reach))


def forced_tail(sft: ShiftSystem, word: str) -> tuple[str, str]:
    """For a singleton cylinder, the unique point as (preperiod, cycle).

    The point is preperiod followed by cycle repeated forever; the preperiod
    starts with ``word``.
    """
    if not cylinder_is_singleton(sft, word):
        raise SystemBuildError(f"cylinder of {word!r} is not a single point")
    adj = sft.adjacency
    seq = [sft.symbol_index(c) for c in word]
    first_at = {}
    for pos, s in enumerate(seq):
        first_at.setdefault(s, pos)
    cur = seq[-1]
    while True:
        nxt = next(iter_bits(adj[cur]))
        if nxt in first_at:
            start = first_at[nxt]
            pre = "".join(sft.alphabet[i] for i in seq[:start])
            cyc = "".join(sft.alphabet[i] for i in seq[start:])
            return pre, cyc
        seq.append(nxt)
        first_at[nxt] = len(seq) - 1
        cur = nxt


def eventually_periodic_block(pre: str, cyc: str, start: int, length: int) -> str:
    """Block of length ``length`` starting at position ``start`` of the
    sequence pre + cyc + cyc + ..."""
    out = []
    for pos in range(start, start + length):
        if pos < len(pre):
            out.append(pre[pos])
        else:
            out.append(cyc[(pos - len(pre)) % len(cyc)])
    return "".join(out)


# ---------------------------------------------------------------------------
# piecewise-linear interval maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _as_fraction(self.lo))
        object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise SystemBuildError(f"interval [{self.lo}, {self.hi}] is reversed")

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class IntervalUnion:
    """Finitely many disjoint closed intervals, sorted; touching intervals
    are merged at construction."""

    parts: tuple[Interval, ...]

    @classmethod
    def of(cls, intervals) -> "IntervalUnion":
        items = sorted(intervals, key=lambda iv: (iv.lo, iv.hi))
        merged: list[Interval] = []
        for iv in items:
            if merged and iv.lo <= merged[-1].hi:
                if iv.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, iv.hi)
            else:
                merged.append(Interval(iv.lo, iv.hi))
        return cls(tuple(merged))

    def contains_interval(self, other: Interval) -> bool:
        return any(p.lo <= other.lo and other.hi <= p.hi for p in self.parts)

    def contains_union(self, other: "IntervalUnion") -> bool:
        return all(self.contains_interval(p) for p in other.parts)

    def intersects(self, other: Interval) -> bool:
        return any(p.intersects(other) for p in self.parts)

    def __eq__(self, other):
        return isinstance(other, IntervalUnion) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)


UNIT = Interval(Fraction(0), Fraction(1))
UNIT_UNION = IntervalUnion.of([UNIT])


@dataclass(frozen=True)
class PLSystem:
    """Continuous piecewise-linear self-map of [0,1] with rational data."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]


def make_pl_system(breakpoints, values) -> PLSystem:
    bps = tuple(_as_fraction(b) for b in breakpoints)
    vals = tuple(_as_fraction(v) for v in values)
    if len(bps) != len(vals) or len(bps) < 2:
        raise SystemBuildError("need matching breakpoint and value lists (>= 2 each)")
    if bps[0] != 0 or bps[-1] != 1:
        raise SystemBuildError("breakpoints must start at 0 and end at 1")
    if any(a >= b for a, b in zip(bps, bps[1:])):
        raise SystemBuildError("breakpoints must be strictly increasing")
    if any(v < 0 or v > 1 for v in vals):
        raise SystemBuildError("values must lie in [0,1]")
    return PLSystem(bps, vals)


def tent_map() -> PLSystem:
    return make_pl_system(["0", "1/2", "1"], ["0", "1", "0"])


def pl_eval(f: PLSystem, x: Fraction) -> Fraction:
    x = _as_fraction(x)
    if x < 0 or x > 1:
        raise SystemBuildError(f"{x} lies outside the domain [0,1]")
    for i in range(len(f.breakpoints) - 1):
        lo, hi = f.breakpoints[i], f.breakpoints[i + 1]
        if lo <= x <= hi:
            if x == lo:
                return f.values[i]
            slope = (f.values[i + 1] - f.values[i]) / (hi - lo)
            return f.values[i] + slope * (x - lo)
    raise SystemBuildError(f"{x} lies outside the domain [0,1]")


def pl_image_of_interval(f: PLSystem, j: Interval) -> IntervalUnion:
    """Exact image f(J), computed piecewise on monotone segments."""
    if j.lo < 0 or j.hi > 1:
        raise SystemBuildError("interval must lie within [0,1]")
    pieces = []
    for i in range(len(f.breakpoints) - 1):
        lo = max(f.breakpoints[i], j.lo)
        hi = min(f.breakpoints[i + 1], j.hi)
        if lo > hi:
            continue
        a, b = pl_eval(f, lo), pl_eval(f, hi)
        pieces.append(Interval(min(a, b), max(a, b)))
    return IntervalUnion.of(pieces)


def pl_image_of_union(f: PLSystem, u: IntervalUnion) -> IntervalUnion:
    out: list[Interval] = []
    for part in u.parts:
        out.extend(pl_image_of_interval(f, part).parts)
    return IntervalUnion.of(out)


def pl_compose(outer: PLSystem, inner: PLSystem) -> PLSystem:
    """Exact composition outer(inner(x)) as a piecewise-linear map."""
    cuts = set(inner.breakpoints)
    for i in range(len(inner.breakpoints) - 1):
        lo, hi = inner.breakpoints[i], inner.breakpoints[i + 1]
        vlo, vhi = inner.values[i], inner.values[i + 1]
        if vlo == vhi:
            continue
        slope = (vhi - vlo) / (hi - lo)
        for beta in outer.breakpoints:
            x = lo + (beta - vlo) / slope
            if lo < x < hi:
                cuts.add(x)
    bps = tuple(sorted(cuts))
    vals = tuple(pl_eval(outer, pl_eval(inner, x)) for x in bps)
    return PLSystem(bps, vals)


def pl_iterate(f: PLSystem, power: int) -> PLSystem:
    if power < 1:
        raise SystemBuildError("power must be positive")
    result = f
    for _ in range(power - 1):
        result = pl_compose(f, result)
    return result


def dyadic_cells(depth: int) -> tuple[Interval, ...]:
    step = Fraction(1, 1 << depth)
    return tuple(Interval(i * step, (i + 1) * step) for i in range(1 << depth))
