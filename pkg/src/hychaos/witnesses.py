"""Proof objects shared by the property checkers and the equivalence harness.

Periodic points of a shift are stored by their primitive repeating word
(``root``): the point is root repeated forever, and two points are equal
exactly when their roots coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .graphs import shortest_path
from .metric import iter_bits
from .systems import FiniteSystem, ShiftSystem, SystemBuildError


class WitnessError(ValueError):
    """A proof object fails its own re-validation."""


class NoCycleError(ValueError):
    """No periodic point passes through the requested cylinder."""


# ---------------------------------------------------------------------------
# periodic sequences of a shift
# ---------------------------------------------------------------------------


def primitive_root(word: str) -> str:
    """Shortest word whose repetition produces the same sequence."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


def rotate_word(word: str, steps: int) -> str:
    s = steps % len(word)
    return word[s:] + word[:s]


def periodic_prefix(root: str, length: int) -> str:
    reps = -(-length // len(root))
    return (root * reps)[:length]


def shift_point(root: str, steps: int) -> str:
    """Root of the point obtained by applying the shift ``steps`` times."""
    return primitive_root(rotate_word(root, steps))


def find_periodic_point_in_cylinder(sft: ShiftSystem, word: str) -> tuple[str, int]:
    """Periodic point through the cylinder of ``word``.

    Returns (w, period) where w is ``word`` extended by a shortest return
    path, the point is w repeated forever, and period == len(w) (a period of
    the point, not necessarily the least one).  Raises :class:`NoCycleError`
    when no cycle passes through the word.
    """
    if not sft.word_allowed(word):
        raise SystemBuildError(f"word {word!r} is not allowed")
    src = sft.symbol_index(word[-1])
    dst = sft.symbol_index(word[0])
    path = shortest_path(sft.adjacency, src, dst)
    if path is None:
        raise NoCycleError(f"no cycle passes through the cylinder of {word!r}")
    # path = [last(word), ..., first(word)]; the interior symbols extend word
    extension = "".join(sft.alphabet[i] for i in path[1:-1])
    w = word + extension
    if not sft.word_allowed_cyclic(w):
        raise WitnessError(f"return path through {word!r} is not cyclically allowed")
    return w, len(w)


# ---------------------------------------------------------------------------
# witness containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmallPeriodicWitness:
    """Closed Y inside an open cell with image of Y under the k-th iterate
    contained in Y.  Finite-system form: both sets are bit masks."""

    open_cell: int
    invariant_set: int
    k: int

    def validate(self, sys: FiniteSystem) -> None:
        if self.invariant_set <= 0:
            raise WitnessError("invariant set must be nonempty")
        if self.k < 1:
            raise WitnessError("k must be positive")
        if self.invariant_set & ~self.open_cell:
            raise WitnessError("invariant set escapes its open cell")
        image = self.invariant_set
        for _ in range(self.k):
            image = sys.image_mask(image)
        if image & ~self.invariant_set:
            raise WitnessError("set is not invariant under the k-th iterate")


@dataclass(frozen=True)
class FamilyWitness:
    """Finite family of hyperspace states mapped into itself by the k-th
    iterate of the induced map."""

    states: tuple[int, ...]
    k: int


@dataclass(frozen=True)
class PeriodicSetWitness:
    """A hyperspace point Z fixed by the k-th iterate of the induced map.

    ``members`` is a bit mask for finite systems, or a sorted tuple of
    primitive roots of periodic sequences for shifts.
    """

    members: int | tuple[str, ...]
    k: int

    def validate_finite(self, sys: FiniteSystem) -> None:
        if not isinstance(self.members, int) or self.members <= 0:
            raise WitnessError("finite witness needs a nonempty member mask")
        image = self.members
        for _ in range(self.k):
            image = sys.image_mask(image)
        if image != self.members:
            raise WitnessError("k-th iterate does not fix the set")

    def validate_shift(self, sft: ShiftSystem) -> None:
        if not isinstance(self.members, tuple) or not self.members:
            raise WitnessError("shift witness needs a nonempty root tuple")
        for root in self.members:
            if not sft.word_allowed_cyclic(root):
                raise WitnessError(f"root {root!r} is not an allowed cycle")
        moved = {shift_point(root, self.k) for root in self.members}
        if moved != set(self.members):
            raise WitnessError("k-th shift iterate does not fix the set")

    def validate_in_cylinders(self, sft: ShiftSystem, blocks: tuple[str, ...]) -> None:
        """Vietoris membership in the basic open built from the cylinders of
        ``blocks``: covered by their union and meeting each one."""
        level = len(blocks[0])
        prefixes = {periodic_prefix(root, level) for root in self.members}
        if not prefixes <= set(blocks):
            raise WitnessError("a member escapes the union of the cylinders")
        if not set(blocks) <= prefixes:
            raise WitnessError("some cylinder of the open is not met")


def combine_witnesses(
    parts: list[tuple[object, int]],
    sys: FiniteSystem | ShiftSystem,
    mode: str = "product",
) -> PeriodicSetWitness:
    """Merge per-cell invariant parts into one fixed hyperspace point.

    Each part is (member, k) with the k-th iterate fixing the member exactly;
    the combined exponent is the product of the part exponents (``mode="lcm"``
    uses their least common multiple instead).  The result is re-validated
    before being returned.
    """
    if not parts:
        raise WitnessError("cannot combine an empty part list")
    if mode not in ("product", "lcm"):
        raise WitnessError(f"unknown combination mode {mode!r}")
    ks = [k for _, k in parts]
    if any(k < 1 for k in ks):
        raise WitnessError("part exponents must be positive")
    combined_k = 1
    for k in ks:
        combined_k = combined_k * k if mode == "product" else lcm(combined_k, k)

    if isinstance(sys, FiniteSystem):
        mask = 0
        for member, k in parts:
            if not isinstance(member, int) or member <= 0:
                raise WitnessError("finite parts must be nonempty masks")
            image = member
            for _ in range(k):
                image = sys.image_mask(image)
            if image != member:
                raise WitnessError("a part is not fixed by its own exponent")
            mask |= member
        witness = PeriodicSetWitness(mask, combined_k)
        witness.validate_finite(sys)
        return witness

    roots = []
    for member, k in parts:
        if not isinstance(member, str):
            raise WitnessError("shift parts must be periodic words")
        if not sys.word_allowed_cyclic(member):
            raise WitnessError(f"part {member!r} is not an allowed cycle")
        if k % len(primitive_root(member)) != 0:
            raise WitnessError(f"claimed exponent does not fix {member!r}")
        roots.append(primitive_root(member))
    witness = PeriodicSetWitness(tuple(sorted(set(roots))), combined_k)
    witness.validate_shift(sys)
    return witness


def union_closure(
    family: FamilyWitness, open_cell: int, sys: FiniteSystem
) -> SmallPeriodicWitness:
    """Union of an invariant family of hyperspace states.

    Requires every family member inside the open cell and the family mapped
    into itself by the k-th induced iterate; returns the union with the same
    exponent, re-validated as a small periodic set of the base system.
    """
    if not family.states:
        raise WitnessError("family must be nonempty")
    if family.k < 1:
        raise WitnessError("family exponent must be positive")
    states = set(family.states)
    for state in family.states:
        if state <= 0:
            raise WitnessError("family members must be nonempty states")
        if state & ~open_cell:
            raise WitnessError("a family member escapes the open cell")
        image = state
        for _ in range(family.k):
            image = sys.image_mask(image)
        if image not in states:
            raise WitnessError("family is not invariant under the k-th iterate")
    union = 0
    for state in family.states:
        union |= state
    witness = SmallPeriodicWitness(open_cell, union, family.k)
    witness.validate(sys)
    return witness


def periodic_kernel(y_mask: int, k: int, sys: FiniteSystem) -> int:
    """Eventual image of Y under the k-th iterate: the largest subset of Y
    mapped onto itself.  Requires the k-th image of Y inside Y."""
    if y_mask <= 0:
        raise WitnessError("Y must be nonempty")
    if k < 1:
        raise WitnessError("k must be positive")
    image = y_mask
    for _ in range(k):
        image = sys.image_mask(image)
    if image & ~y_mask:
        raise WitnessError("the k-th image of Y is not contained in Y")
    current = y_mask
    while True:
        image = current
        for _ in range(k):
            image = sys.image_mask(image)
        if image == current:
            return current
        current = image


def mask_labels(sys: FiniteSystem, mask: int) -> list[str]:
    return [sys.space.points[i] for i in iter_bits(mask)]
