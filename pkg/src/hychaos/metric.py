"""Exact finite metric spaces, Hausdorff distance, and Vietoris-basis membership.

All distances are `fractions.Fraction` values.  Nothing in this module (or in
any verdict-relevant path of the package) touches floating point, so every
comparison is exact and every result is bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations


class MetricError(ValueError):
    """Malformed or inconsistent metric-space input."""


class InvalidSetError(ValueError):
    """A set argument violates its construction contract (e.g. empty)."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise MetricError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class FinitePointSpace:
    """A finite metric space: ordered opaque point labels plus a distance table.

    The constructor normalises the table to Fractions but does not check the
    metric axioms; use :func:`check_metric_axioms` for that, which reports
    malformed tables and axiom violations separately.
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.points:
            raise MetricError("a point space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise MetricError("point labels must be distinct")
        object.__setattr__(self, "points", tuple(str(p) for p in self.points))
        object.__setattr__(
            self,
            "dist",
            tuple(tuple(_as_fraction(v) for v in row) for row in self.dist),
        )

    @property
    def size(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        return self.points.index(label)

    def distance(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    @classmethod
    def uniform(cls, points) -> "FinitePointSpace":
        """Discrete metric: distance 1 between distinct points."""
        pts = tuple(points)
        n = len(pts)
        table = tuple(
            tuple(Fraction(0) if i == j else Fraction(1) for j in range(n))
            for i in range(n)
        )
        return cls(pts, table)

    @classmethod
    def from_line(cls, coords: dict[str, Fraction]) -> "FinitePointSpace":
        """Points on a line; distance is absolute coordinate difference."""
        pts = tuple(coords)
        table = tuple(
            tuple(abs(_as_fraction(coords[p]) - _as_fraction(coords[q])) for q in pts)
            for p in pts
        )
        return cls(pts, table)


@dataclass(frozen=True)
class MetricReport:
    """Outcome of checking the metric axioms on a distance table."""

    ok: bool
    failure_kind: str | None = None  # "malformed" | "axiom"
    axiom: str | None = None  # "identity" | "positivity" | "symmetry" | "triangle"
    offending: tuple[str, ...] = ()
    detail: str = ""


def check_metric_axioms(space: FinitePointSpace) -> MetricReport:
    """Validate the distance table of ``space``.

    Malformed tables (wrong shape, negative entries) are reported with
    ``failure_kind="malformed"``; the first violated axiom, if any, is
    reported with ``failure_kind="axiom"`` along with the offending points.
    """
    n = space.size
    if len(space.dist) != n or any(len(row) != n for row in space.dist):
        return MetricReport(
            ok=False,
            failure_kind="malformed",
            detail=f"distance table is not a complete {n}x{n} table",
        )
    for i in range(n):
        for j in range(n):
            if space.dist[i][j] < 0:
                return MetricReport(
                    ok=False,
                    failure_kind="malformed",
                    offending=(space.points[i], space.points[j]),
                    detail=f"negative entry d({space.points[i]},{space.points[j]})",
                )
    for i in range(n):
        if space.dist[i][i] != 0:
            return MetricReport(
                ok=False,
                failure_kind="axiom",
                axiom="identity",
                offending=(space.points[i],),
                detail=f"d(p,p) != 0 at p={space.points[i]}",
            )
    for i, j in combinations(range(n), 2):
        if space.dist[i][j] == 0:
            return MetricReport(
                ok=False,
                failure_kind="axiom",
                axiom="positivity",
                offending=(space.points[i], space.points[j]),
                detail="zero distance between distinct points",
            )
    for i, j in combinations(range(n), 2):
        if space.dist[i][j] != space.dist[j][i]:
            return MetricReport(
                ok=False,
                failure_kind="axiom",
                axiom="symmetry",
                offending=(space.points[i], space.points[j]),
                detail="asymmetric distance pair",
            )
    for i, j, k in permutations(range(n), 3):
        if space.dist[i][k] > space.dist[i][j] + space.dist[j][k]:
            return MetricReport(
                ok=False,
                failure_kind="axiom",
                axiom="triangle",
                offending=(space.points[i], space.points[j], space.points[k]),
                detail=(
                    f"d({space.points[i]},{space.points[k]}) > "
                    f"d({space.points[i]},{space.points[j]}) + "
                    f"d({space.points[j]},{space.points[k]})"
                ),
            )
    return MetricReport(ok=True)


def mask_of_indices(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def iter_bits(mask: int):
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ClosedSet:
    """Nonempty subset of a finite space, stored as a bit mask by point order.

    Canonical ordering by point index makes set equality representational
    equality.  The empty set is rejected at construction.
    """

    space: FinitePointSpace
    mask: int

    def __post_init__(self):
        if self.mask <= 0:
            raise InvalidSetError("closed sets must be nonempty")
        if self.mask >= 1 << self.space.size:
            raise InvalidSetError("member index out of range for the space")

    @classmethod
    def from_labels(cls, space: FinitePointSpace, labels) -> "ClosedSet":
        return cls(space, mask_of_indices(space.index(l) for l in labels))

    def members(self) -> tuple[str, ...]:
        return tuple(self.space.points[i] for i in iter_bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class VietorisOpen:
    """Basic open of the hyperspace: an ordered list of nonempty open cells.

    In the finite model an open cell is an arbitrary nonempty subset of points,
    stored as a bit mask.
    """

    space: FinitePointSpace
    cells: tuple[int, ...]

    def __post_init__(self):
        if not self.cells:
            raise InvalidSetError("a Vietoris basic open needs at least one cell")
        for cell in self.cells:
            if cell <= 0 or cell >= 1 << self.space.size:
                raise InvalidSetError("each cell must be a nonempty subset of the space")

    @classmethod
    def whole_space(cls, space: FinitePointSpace) -> "VietorisOpen":
        return cls(space, ((1 << space.size) - 1,))


def _directed_distance(a_mask: int, b_mask: int, space: FinitePointSpace) -> Fraction:
    worst = Fraction(0)
    for x in iter_bits(a_mask):
        best = min(space.dist[x][y] for y in iter_bits(b_mask))
        if best > worst:
            worst = best
    return worst


def hausdorff_distance(a: ClosedSet, b: ClosedSet, space: FinitePointSpace) -> Fraction:
    """Exact Hausdorff distance between two nonempty subsets of ``space``.

    Evaluates max of the two directed max-min distances.  Symmetric, zero
    exactly when the sets coincide.
    """
    if a.space != space or b.space != space:
        raise MetricError("sets must live in the given space")
    return max(
        _directed_distance(a.mask, b.mask, space),
        _directed_distance(b.mask, a.mask, space),
    )


def vietoris_contains(a: ClosedSet, opens: VietorisOpen) -> bool:
    """Membership of ``a`` in the basic open: covered by the union of the
    cells and meeting every cell."""
    if a.space != opens.space:
        raise MetricError("set and open cells must live in the same space")
    union = 0
    for cell in opens.cells:
        union |= cell
    if a.mask & ~union:
        return False
    return all(a.mask & cell for cell in opens.cells)
