"""Acceptability and admissibility: point checkers and constraint fragments."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniq_regions.constraints import check_assignment
from uniq_regions.exact import Q, rat
from uniq_regions.strichartz import (
    AdmissibilityMode,
    SpaceTimePair,
    admissibility,
    admissibility_fragment,
    is_acceptable,
)

HALF = rat(1, 2)

time_inv = st.fractions(min_value=0, max_value=1, max_denominator=12).map(
    lambda f: rat(f.numerator, f.denominator)
)
space_inv = st.fractions(min_value=0, max_value="1/2", max_denominator=12).map(
    lambda f: rat(f.numerator, f.denominator)
)
st_pairs = st.builds(SpaceTimePair, time_inv, space_inv)


# -- acceptability ----------------------------------------------------------


def test_pair_boxes_are_validated():
    with pytest.raises(ValueError):
        SpaceTimePair(rat(3, 2), rat(1, 4))
    with pytest.raises(ValueError):
        SpaceTimePair(rat(1, 2), rat(3, 4))


@pytest.mark.parametrize(
    "q_inv, r_inv, expected",
    [
        (rat(0), HALF, True),
        (HALF, rat(1, 6), True),
        (HALF, HALF, False),
        (rat(0), rat(1, 4), False),
        (rat(1), rat(1, 6), False),
    ],
)
def test_acceptability_examples(q_inv, r_inv, expected):
    assert is_acceptable(3, SpaceTimePair(q_inv, r_inv)) is expected


def test_acceptability_boundary_is_rejected():
    # 1/q = n(1/2 - 1/r) exactly: n=3, r_inv = 1/4 gives q_inv = 3/4
    assert not is_acceptable(3, SpaceTimePair(rat(3, 4), rat(1, 4)))


@given(st.integers(min_value=2, max_value=8), space_inv)
def test_infinite_time_needs_the_endpoint(n, r_inv):
    pair = SpaceTimePair(rat(0), r_inv)
    assert is_acceptable(n, pair) == (r_inv == HALF)


# -- admissibility point checks ---------------------------------------------


def test_sharp_example():
    report = admissibility(
        3, SpaceTimePair(HALF, rat(1, 6)), SpaceTimePair(HALF, rat(1, 6))
    )
    assert report.admissible
    assert report.mode is AdmissibilityMode.SHARP
    assert report.failed == ()


def test_nonsharp_example():
    report = admissibility(
        3, SpaceTimePair(HALF, rat(1, 6)), SpaceTimePair(rat(0), HALF)
    )
    assert report.admissible
    assert report.mode is AdmissibilityMode.NON_SHARP


def test_not_admissible_collects_failures():
    report = admissibility(
        3, SpaceTimePair(HALF, HALF), SpaceTimePair(HALF, HALF)
    )
    assert not report.admissible
    assert report.mode is None
    assert "acceptability (gamma,rho)" in report.failed
    assert "acceptability (q,r)" in report.failed
    assert any("scaling" in label for label in report.failed)


def test_two_dimensions_need_finite_space_exponents():
    report = admissibility(
        2, SpaceTimePair(HALF, rat(0)), SpaceTimePair(HALF, rat(1, 2))
    )
    assert not report.admissible
    assert "finite space exponent (gamma,rho)" in report.failed


def test_besov_variant_caps_the_time_exponents():
    gr = SpaceTimePair(rat(3, 4), rat(1, 8))
    qr = SpaceTimePair(rat(1, 8), rat(3, 8))
    plain = admissibility(3, gr, qr)
    capped = admissibility(3, gr, qr, besov=True)
    assert "besov time cap (gamma,rho)" not in plain.failed
    assert "besov time cap (gamma,rho)" in capped.failed


@given(st.integers(min_value=2, max_value=6), st_pairs, st_pairs)
@settings(max_examples=300, deadline=None)
def test_mode_determines_the_time_sum(n, gr, qr):
    report = admissibility(n, gr, qr)
    total = gr.q_inv + qr.q_inv
    if report.mode is AdmissibilityMode.SHARP:
        assert total == 1
    elif report.mode is AdmissibilityMode.NON_SHARP:
        assert total < 1
    if report.failed:
        assert report.mode is None


@given(st.integers(min_value=2, max_value=6), st_pairs, st_pairs)
@settings(max_examples=300, deadline=None)
def test_swapping_the_pairs_preserves_the_verdict(n, gr, qr):
    one = admissibility(n, gr, qr)
    two = admissibility(n, qr, gr)
    assert one.admissible == two.admissible
    assert one.mode == two.mode


# -- constraint fragments ---------------------------------------------------


def as_assignment(gr: SpaceTimePair, qr: SpaceTimePair) -> dict[str, Q]:
    return {
        "gamma_inv": gr.q_inv,
        "rho_inv": gr.r_inv,
        "q_inv": qr.q_inv,
        "r_inv": qr.r_inv,
    }


def test_besov_nonsharp_fragment_example():
    fragment = admissibility_fragment(3, True, AdmissibilityMode.NON_SHARP)
    w = as_assignment(
        SpaceTimePair(HALF, rat(1, 6)), SpaceTimePair(rat(0), HALF)
    )
    assert check_assignment(fragment, w) == []


def test_sharp_fragment_example():
    fragment = admissibility_fragment(3, False, AdmissibilityMode.SHARP)
    w = as_assignment(
        SpaceTimePair(HALF, rat(1, 6)), SpaceTimePair(HALF, rat(1, 6))
    )
    assert check_assignment(fragment, w) == []


def test_two_dimensional_fragment_rejects_infinite_space():
    fragment = admissibility_fragment(2, False, AdmissibilityMode.NON_SHARP)
    w = as_assignment(
        SpaceTimePair(HALF, rat(1, 6)), SpaceTimePair(HALF, rat(0))
    )
    labels = [v.label for v in check_assignment(fragment, w)]
    assert "finite space exponent (q,r)" in labels


def on_closure_boundary(n: int, pair: SpaceTimePair) -> bool:
    """Points the closure fragment admits but the point checker rejects."""
    if pair.q_inv == 0 and pair.r_inv < HALF:
        return True
    return pair.q_inv > 0 and pair.q_inv == n * (HALF - pair.r_inv)


@given(st.integers(min_value=2, max_value=5), st_pairs, st_pairs)
@settings(max_examples=400, deadline=None)
def test_fragment_agrees_with_the_point_checker(n, gr, qr):
    report = admissibility(n, gr, qr)
    w = as_assignment(gr, qr)
    for mode in AdmissibilityMode:
        fragment = admissibility_fragment(n, False, mode)
        satisfied = check_assignment(fragment, w) == []
        if report.mode is mode:
            assert satisfied
        elif satisfied:
            assert on_closure_boundary(n, gr) or on_closure_boundary(n, qr)
