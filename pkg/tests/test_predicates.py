"""Closed-form region predicates, threshold enclosures, inequality chains."""

from __future__ import annotations

import pytest

from uniq_regions.exact import rat
from uniq_regions.scenarios import ProblemParams
from uniq_regions.predicates import (
    PREDICATES,
    ThresholdResult,
    UndecidableAtPrecision,
    critical_boundary,
    critical_quadratic,
    exact_threshold,
    literature_predicate,
    region_predicate,
    s0,
    simplest_in,
    theorem_predicate,
    verify_chain,
)

HALF = rat(1, 2)


# -- registry ---------------------------------------------------------------


def test_predicate_registry():
    assert set(PREDICATES) == {
        "thm11", "thm12", "thm15", "thm16",
        "kato", "furioli-terraneo", "rogers",
        "win-tsutsumi-sub", "win-tsutsumi-crit", "cazenave-crit",
        "open-sub", "open-crit",
    }
    kinds = {PREDICATES[p].kind for p in PREDICATES}
    assert kinds == {"theorem", "literature", "open"}


def test_unknown_predicate_is_rejected():
    point = ProblemParams(3, HALF, rat(3, 2))
    with pytest.raises(ValueError, match="unknown predicate"):
        region_predicate("bogus", point)
    assert theorem_predicate("thm11", point)
    assert literature_predicate("rogers", point)
    with pytest.raises(ValueError):
        theorem_predicate("rogers", point)
    with pytest.raises(ValueError):
        literature_predicate("thm11", point)


# -- point evaluations ------------------------------------------------------

CASES = [
    # new subcritical range, Lipschitz powers: window [1, 2) at (3, 1/2)
    ("thm11", 3, HALF, rat(1), True),
    ("thm11", 3, HALF, rat(15, 8), True),
    ("thm11", 3, HALF, rat(2), False),
    ("thm11", 3, HALF, rat(7, 8), False),
    # new subcritical range, Hoelder powers
    ("thm12", 3, HALF, rat(3, 4), True),
    ("thm12", 3, HALF, rat(1), False),
    # scale-invariant critical cases
    ("thm15", 2, HALF, rat(3), True),
    ("thm15", 3, rat(1, 3), rat(11, 7), True),
    ("thm15", 3, HALF, rat(2), False),
    # energy-type critical cases
    ("thm16", 3, rat(3, 4), rat(8, 3), True),
    ("thm16", 4, rat(1, 3), rat(6, 5), False),
    ("thm16", 5, HALF, rat(1), True),
    # classical subcritical range
    ("kato", 3, HALF, rat(1), True),
    ("kato", 3, HALF, rat(3, 2), False),
    # homogeneous-space range
    ("furioli-terraneo", 3, HALF, rat(5, 4), True),
    ("furioli-terraneo", 3, HALF, rat(1), False),
    # generalized dispersive estimate range
    ("rogers", 3, HALF, rat(3, 2), True),
    ("rogers", 3, HALF, rat(5, 3), False),
    # improved dimension-3 subcritical range: window [15/7, 16/7) at s = 5/8
    ("win-tsutsumi-sub", 3, rat(5, 8), rat(15, 7), True),
    ("win-tsutsumi-sub", 3, rat(5, 8), rat(31, 14), True),
    ("win-tsutsumi-sub", 3, rat(5, 8), rat(16, 7), False),
    ("win-tsutsumi-sub", 3, rat(3, 4), rat(2), False),
    # improved critical cases
    ("win-tsutsumi-crit", 4, HALF, rat(4, 3), True),
    # classical critical uniqueness above regularity one
    ("cazenave-crit", 3, rat(5, 4), rat(8), True),
    # open regions
    ("open-sub", 3, HALF, rat(15, 8), False),
    ("open-crit", 3, HALF, rat(2), True),
    ("open-crit", 5, rat(1, 4), rat(8, 9), True),
]


@pytest.mark.parametrize(
    "pid, n, s, alpha, expected",
    CASES,
    ids=[f"{pid}-{n}-{s}-{a}" for pid, n, s, a, _ in CASES],
)
def test_point_evaluation(pid, n, s, alpha, expected):
    assert PREDICATES[pid].fn(ProblemParams(n, s, alpha)) is expected


def test_thm11_window_is_empty_without_valid_powers():
    # at s = 1/8 the Lipschitz floor exceeds every cap in dimension 5
    assert not PREDICATES["thm11"].fn(ProblemParams(5, rat(1, 8), rat(1)))


# -- threshold quadratic ----------------------------------------------------


def test_quadratic_sign_change():
    assert critical_quadratic(5, rat(1, 4)) > 0
    assert critical_quadratic(5, rat(1, 2)) < 0


def test_enclosure_is_certified():
    lo, hi = s0(5)
    assert hi - lo <= rat(1, 10**6)
    assert critical_quadratic(5, lo) > 0
    assert critical_quadratic(5, hi) < 0


def test_enclosure_needs_dimension_five():
    with pytest.raises(ValueError):
        s0(4)


@pytest.mark.parametrize(
    "lo, hi, expected",
    [
        (rat(-1, 3), rat(1, 7), rat(0)),
        (rat(1, 3), rat(1, 2), rat(1, 2)),
        (rat(2, 7), rat(1, 3), rat(1, 3)),
        (rat(7, 3), rat(11, 4), rat(5, 2)),
        (rat(-1, 2), rat(-1, 3), rat(-1, 2)),
        (rat(5), rat(9), rat(5)),
    ],
)
def test_simplest_rational_in_an_interval(lo, hi, expected):
    got = simplest_in(lo, hi)
    assert lo <= got <= hi
    assert got == expected


def test_simplest_rejects_an_empty_interval():
    with pytest.raises(ValueError):
        simplest_in(rat(1, 2), rat(1, 3))


# -- threshold bisection ----------------------------------------------------


def test_dimension_three_threshold_is_one_half():
    assert exact_threshold(3) == HALF


def test_dimension_four_threshold_is_one_third():
    assert exact_threshold(4) == rat(1, 3)


def test_dimension_five_threshold_is_not_a_simple_rational():
    with pytest.raises(UndecidableAtPrecision) as info:
        exact_threshold(5)
    lo, hi = info.value.enclosure
    assert lo < hi
    assert simplest_in(lo, hi).denominator > 1000


def test_boundary_bracket_lands_inside_the_quadratic_enclosure():
    result = critical_boundary(5, rat(1, 10**9))
    assert isinstance(result, ThresholdResult)
    assert result.scenario_id == "critical-high-dim"
    lo, hi = s0(5, rat(1, 10**9))
    assert result.lower < hi and lo < result.upper


def test_boundary_bisection_needs_dimension_three():
    with pytest.raises(ValueError):
        critical_boundary(2)


def test_tolerance_guard_rejects_unresolvable_requests():
    with pytest.raises(ValueError):
        exact_threshold(5, tol=rat(1, 100), max_den=1000)


# -- inequality chains ------------------------------------------------------


def test_chain_counterexample_is_masked():
    report = verify_chain(3, [HALF])
    (sample,) = report["lipschitz_chain"]
    assert not sample.second_holds
    assert sample.second_masked
    assert sample.passes


def test_chain_holds_outright_at_small_regularity():
    for n in (3, 4, 5):
        small = rat(n, 4 * (n - 1))
        samples = [small / 2, small * rat(3, 4)]
        report = verify_chain(n, samples)
        for sample in report["lipschitz_chain"]:
            assert sample.first_holds and sample.second_holds


def test_chain_report_shape():
    report = verify_chain(6, [rat(1, 4), rat(1, 2)])
    assert set(report) == {"holder_chain"}
    report = verify_chain(5, [rat(1, 4)])
    assert set(report) == {"lipschitz_chain", "holder_chain"}
    with pytest.raises(ValueError):
        verify_chain(2, [rat(1, 4)])


def test_chain_samples_keep_to_the_open_unit_interval():
    report = verify_chain(4, [rat(0), rat(1, 3), rat(1), rat(3, 2)])
    assert [sample.s for sample in report["holder_chain"]] == [rat(1, 3)]
