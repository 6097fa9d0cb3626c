"""Rational parsing, bounds, intervals and canonical interval sets."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uniq_regions.exact import (
    Bound,
    Interval,
    IntervalSet,
    format_rational,
    lower_max,
    rat,
    upper_min,
)

rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=64
).map(lambda f: rat(f.numerator, f.denominator))


# -- parsing and formatting -------------------------------------------------


@pytest.mark.parametrize(
    "text, num, den",
    [
        ("3/4", 3, 4),
        ("-1/2", -1, 2),
        ("7", 7, 1),
        ("0", 0, 1),
        ("0.25", 1, 4),
        ("-0.5", -1, 2),
    ],
)
def test_rat_parses_text(text, num, den):
    assert rat(text) == rat(num, den)


def test_rat_rejects_garbage():
    with pytest.raises(ValueError):
        rat("one half")
    with pytest.raises(ValueError):
        rat("1/0")


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.1)


@given(rationals)
def test_format_round_trips(q):
    assert rat(format_rational(q)) == q


@given(rationals, rationals, rationals)
def test_exact_field_arithmetic(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


# -- bounds -----------------------------------------------------------------


def test_infinite_bounds_are_open():
    assert not Bound.neg_inf().closed
    assert not Bound.pos_inf().closed


def test_stricter_closedness_wins_at_ties():
    closed = Bound.closed_at(rat(1, 2))
    opened = Bound.open_at(rat(1, 2))
    assert lower_max(closed, opened) == opened
    assert upper_min(closed, opened) == opened


def test_bound_pair_serialization():
    assert Bound.closed_at(rat(-1, 2)).as_pair() == ["-1/2", "closed"]
    assert Bound.open_at(0).as_pair() == ["0", "open"]


# -- intervals --------------------------------------------------------------


def half_open(lo, hi):
    return Interval(Bound.closed_at(lo), Bound.open_at(hi))


def test_half_open_membership():
    window = half_open(rat(-1, 2), 0)
    assert window.contains(rat(-1, 2))
    assert not window.contains(rat(0))
    assert window.contains(rat(-1, 4))


def test_empty_interval_contains_nothing():
    empty = Interval(Bound.open_at(0), Bound.open_at(0))
    assert empty.is_empty()
    assert not empty.contains(rat(0))


@pytest.mark.parametrize(
    "interval, expected",
    [
        (half_open(0, 1), rat(1, 2)),
        (Interval(Bound.closed_at(3), Bound.pos_inf()), rat(4)),
        (Interval(Bound.neg_inf(), Bound.open_at(-2)), rat(-3)),
        (Interval(Bound.neg_inf(), Bound.pos_inf()), rat(0)),
        (Interval(Bound.closed_at(5), Bound.closed_at(5)), rat(5)),
    ],
)
def test_sample_follows_the_midpoint_rule(interval, expected):
    assert interval.sample() == expected
    assert interval.contains(interval.sample())


# -- interval sets ----------------------------------------------------------


def test_canonicalization_merges_and_sorts():
    pieces = [
        half_open(rat(1, 2), 1),
        half_open(0, rat(1, 2)),
        Interval(Bound.open_at(2), Bound.open_at(2)),
    ]
    merged = IntervalSet.from_intervals(pieces)
    assert merged == IntervalSet.bounded(0, 1, lo_closed=True, hi_closed=False)
    assert len(merged.intervals) == 1


def test_touching_open_endpoints_stay_separate():
    left = Interval(Bound.open_at(0), Bound.open_at(1))
    right = Interval(Bound.open_at(1), Bound.open_at(2))
    gap = IntervalSet.from_intervals([left, right])
    assert len(gap.intervals) == 2
    assert not gap.contains(rat(1))


def test_single_requires_exactly_one_piece():
    empty = IntervalSet.empty()
    with pytest.raises(ValueError):
        empty.single()
    two = IntervalSet.from_intervals(
        [half_open(0, 1), half_open(2, 3)]
    )
    with pytest.raises(ValueError):
        two.single()
    one = IntervalSet.bounded(0, 1)
    assert one.single().contains(rat(1, 2))


def test_repr_forms():
    assert repr(IntervalSet.empty()) == "{}"
    window = IntervalSet.bounded(rat(-1, 2), 0, lo_closed=True, hi_closed=False)
    assert repr(window) == "[-1/2, 0)"


intervals = st.builds(
    lambda lo, hi, lc, hc: Interval(
        Bound.closed_at(lo) if lc else Bound.open_at(lo),
        Bound.closed_at(hi) if hc else Bound.open_at(hi),
    ),
    rationals,
    rationals,
    st.booleans(),
    st.booleans(),
)
interval_sets = st.lists(intervals, max_size=5).map(IntervalSet.from_intervals)


@given(interval_sets)
def test_canonicalization_is_a_fixpoint(s):
    assert IntervalSet.from_intervals(s.intervals) == s


@given(interval_sets)
def test_canonical_pieces_are_sorted_and_disjoint(s):
    for piece in s.intervals:
        assert not piece.is_empty()
        assert piece.contains(piece.sample())
    for a, b in zip(s.intervals, s.intervals[1:]):
        boundary = a.hi.value
        assert boundary < b.lo.value or (
            boundary == b.lo.value and not a.hi.closed and not b.lo.closed
        )


@given(interval_sets, interval_sets, rationals)
def test_intersection_agrees_with_membership(a, b, x):
    both = a & b
    assert both.contains(x) == (a.contains(x) and b.contains(x))


@given(interval_sets, interval_sets)
def test_intersection_is_commutative(a, b):
    assert (a & b) == (b & a)


@given(interval_sets)
def test_intersection_is_idempotent(a):
    assert (a & a) == a


@given(interval_sets, interval_sets, rationals)
def test_union_agrees_with_membership(a, b, x):
    either = a | b
    assert either.contains(x) == (a.contains(x) or b.contains(x))
