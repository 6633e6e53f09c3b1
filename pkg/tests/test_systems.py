"""System construction and the exact piecewise-linear interval machinery."""

import random
from fractions import Fraction
from itertools import product

import pytest

from hychaos.metric import FinitePointSpace
from hychaos.systems import (
    Interval,
    IntervalUnion,
    SystemBuildError,
    allowed_words,
    dyadic_cells,
    make_finite_system,
    make_pl_system,
    make_shift_system,
    pl_eval,
    pl_image_of_interval,
    pl_image_of_union,
    tent_map,
)

from conftest import random_essential_shift


def brute_allowed_words(sft, length):
    """Oracle: enumerate all symbol strings and filter by the matrix."""
    out = []
    for combo in product(range(sft.size), repeat=length):
        if all(sft.transition[a][b] for a, b in zip(combo, combo[1:])):
            out.append("".join(sft.alphabet[i] for i in combo))
    return out


# ---------------------------------------------------------------------------
# finite systems
# ---------------------------------------------------------------------------


def test_finite_one_point():
    sys = make_finite_system(FinitePointSpace.uniform(["p"]), [0])
    assert sys.apply(0) == 0


def test_finite_four_cycle():
    sys = make_finite_system(FinitePointSpace.uniform(list("1234")), [1, 2, 3, 0])
    assert [sys.apply(i) for i in range(4)] == [1, 2, 3, 0]


def test_finite_rejects_out_of_range():
    with pytest.raises(SystemBuildError):
        make_finite_system(FinitePointSpace.uniform(list("1234")), [1, 2, 3, 7])


def test_finite_rejects_partial_map():
    with pytest.raises(SystemBuildError):
        make_finite_system(FinitePointSpace.uniform(list("123")), [0, 1])


# ---------------------------------------------------------------------------
# shifts
# ---------------------------------------------------------------------------


def test_full_two_shift_no_trim():
    sft = make_shift_system(["0", "1"], [[1, 1], [1, 1]])
    assert sft.alphabet == ("0", "1")
    assert sft.trimmed == ()


def test_golden_mean_valid_and_essential():
    sft = make_shift_system(["0", "1"], [[1, 1], [1, 0]])
    assert sft.trimmed == ()
    for i in range(2):
        assert sft.adjacency[i] != 0
        assert any((sft.adjacency[j] >> i) & 1 for j in range(2))


def test_empty_shift_rejected():
    with pytest.raises(SystemBuildError):
        make_shift_system(["0", "1"], [[0, 0], [0, 0]])


def test_non_essential_symbols_trimmed():
    sft = make_shift_system(["0", "1"], [[1, 1], [0, 0]])
    assert sft.alphabet == ("0",)
    assert sft.trimmed == ("1",)


def test_allowed_words_examples():
    full2 = make_shift_system(["0", "1"], [[1, 1], [1, 1]])
    assert allowed_words(full2, 2) == ("00", "01", "10", "11")

    gm = make_shift_system(["0", "1"], [[1, 1], [1, 0]])
    assert allowed_words(gm, 2) == tuple(brute_allowed_words(gm, 2))
    assert allowed_words(gm, 2) == ("00", "01", "10")

    assert allowed_words(gm, 1) == gm.alphabet


def test_allowed_words_prefix_invariant():
    rng = random.Random(11)
    for _ in range(25):
        sft = random_essential_shift(rng, rng.randint(1, 4))
        for level in (1, 2, 3):
            words = set(allowed_words(sft, level))
            longer = allowed_words(sft, level + 1)
            assert {w[:level] for w in longer} <= words
            # essential shifts extend every word
            assert {w[:level] for w in longer} == words


# ---------------------------------------------------------------------------
# piecewise-linear maps
# ---------------------------------------------------------------------------


def test_pl_construction_validation():
    with pytest.raises(SystemBuildError):
        make_pl_system(["0", "1"], ["0"])
    with pytest.raises(SystemBuildError):
        make_pl_system(["0", "2"], ["0", "1"])
    with pytest.raises(SystemBuildError):
        make_pl_system(["0", "1/2", "1"], ["0", "2", "0"])


def test_tent_image_of_left_half():
    tent = tent_map()
    image = pl_image_of_interval(tent, Interval(Fraction(0), Fraction(1, 2)))
    assert image == IntervalUnion.of([Interval(Fraction(0), Fraction(1))])


def test_point_interval_maps_to_value():
    tent = tent_map()
    c = Fraction(1, 3)
    image = pl_image_of_interval(tent, Interval(c, c))
    value = pl_eval(tent, c)
    assert value == Fraction(2, 3)
    assert image == IntervalUnion.of([Interval(value, value)])


def test_tent_image_of_whole_interval():
    tent = tent_map()
    image = pl_image_of_interval(tent, Interval(Fraction(0), Fraction(1)))
    assert image == IntervalUnion.of([Interval(Fraction(0), Fraction(1))])


def test_pl_image_monotone_in_inclusion():
    rng = random.Random(3)
    tent = tent_map()
    zigzag = make_pl_system(
        ["0", "1/4", "1/2", "3/4", "1"], ["1/2", "1", "0", "3/4", "1/4"]
    )
    for f in (tent, zigzag):
        for _ in range(50):
            lo = Fraction(rng.randint(0, 30), 40)
            hi = Fraction(rng.randint(0, 10), 40) + lo
            hi = min(hi, Fraction(1))
            lo2 = max(Fraction(0), lo - Fraction(rng.randint(0, 5), 40))
            hi2 = min(Fraction(1), hi + Fraction(rng.randint(0, 5), 40))
            inner = pl_image_of_interval(f, Interval(lo, hi))
            outer = pl_image_of_interval(f, Interval(lo2, hi2))
            assert outer.contains_union(inner)


def test_tent_dyadic_cells_expand_in_exactly_m_steps():
    tent = tent_map()
    unit = IntervalUnion.of([Interval(Fraction(0), Fraction(1))])
    for m in range(1, 11):
        for cell in dyadic_cells(m):
            image = IntervalUnion.of([cell])
            for step in range(1, m + 1):
                image = pl_image_of_union(tent, image)
                if step < m:
                    assert image != unit
            assert image == unit


def test_interval_union_normalisation():
    u = IntervalUnion.of(
        [Interval(Fraction(1, 2), Fraction(1)), Interval(Fraction(0), Fraction(1, 2))]
    )
    assert u == IntervalUnion.of([Interval(Fraction(0), Fraction(1))])
    v = IntervalUnion.of(
        [Interval(Fraction(0), Fraction(1, 4)), Interval(Fraction(1, 2), Fraction(1))]
    )
    assert len(v.parts) == 2
