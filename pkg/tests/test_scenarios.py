"""Scenario builders: guards, feasibility anchors, windows, certificates."""

from __future__ import annotations

import pytest

from uniq_regions.constraints import check_assignment, is_feasible
from uniq_regions.exact import IntervalSet, rat
from uniq_regions.oracle import lp_feasible
from uniq_regions.scenarios import (
    SCENARIOS,
    ProblemParams,
    ScenarioNotApplicable,
    applicable_scenarios,
    build_scenario,
    closed_form_sigma_window,
    feasibility,
    sigma_report,
    sigma_window,
)

P = ProblemParams


def window(lo, hi, lo_closed, hi_closed):
    return IntervalSet.bounded(rat(lo), rat(hi), lo_closed=lo_closed,
                               hi_closed=hi_closed)


# -- registry and guards ----------------------------------------------------


def test_registry_lists_all_nine_scenarios():
    assert set(SCENARIOS) == {
        "subcritical-usual", "subcritical-better",
        "holder-usual", "holder-better",
        "critical-n2-low", "critical-n2-high",
        "critical-n3-mass", "critical-n3-energy",
        "critical-high-dim",
    }


def test_unknown_scenario_is_rejected():
    with pytest.raises(ValueError, match="unknown scenario"):
        feasibility("bogus", P(3, rat(1, 2), rat(3, 2)))


@pytest.mark.parametrize(
    "params, expected",
    [
        (P(3, rat(1, 2), rat(3, 2)), ("subcritical-usual", "subcritical-better")),
        (P(2, rat(1, 4), rat(5, 3)), ("critical-n2-low", "critical-n2-high")),
        (P(3, rat(1, 2), rat(2)), ("subcritical-usual", "subcritical-better",
                                   "critical-n3-mass", "critical-n3-energy")),
        (P(3, rat(1, 2), rat(0)), ()),
    ],
)
def test_applicable_scenarios(params, expected):
    assert applicable_scenarios(params) == expected


@pytest.mark.parametrize(
    "scenario_id, params",
    [
        ("critical-n2-low", P(3, rat(1, 2), rat(2))),
        ("critical-n3-mass", P(3, rat(1, 3), rat(3, 2))),
        ("subcritical-usual", P(3, rat(1, 2), rat(1, 2))),
        ("holder-usual", P(3, rat(1, 2), rat(3, 2))),
        ("critical-high-dim", P(4, rat(1, 2), rat(2))),
    ],
)
def test_guard_violations_raise(scenario_id, params):
    with pytest.raises(ScenarioNotApplicable):
        build_scenario(scenario_id, params)


# -- feasible anchors -------------------------------------------------------

FEASIBLE_ANCHORS = [
    ("subcritical-usual", P(3, rat(1, 2), rat(3, 2)),
     window("-1/2", 0, True, False)),
    ("subcritical-better", P(4, rat(1, 4), rat(1)),
     window("-1/4", "-1/6", True, False)),
    ("holder-usual", P(3, rat(1, 2), rat(3, 4)),
     window("-1/4", 0, False, False)),
    ("holder-better", P(3, rat(1, 5), rat(9, 10)),
     window("-1/80", 0, True, False)),
    ("critical-n2-low", P(2, rat(1, 4), rat(5, 3)),
     window("-1/4", 0, False, False)),
    ("critical-n2-high", P(2, rat(1, 4), rat(5, 3)),
     window("-1/4", 0, True, False)),
    ("critical-n2-high", P(2, rat(1, 2), rat(3)),
     window("-1/2", 0, False, False)),
    ("critical-n2-high", P(2, rat(3, 4), rat(7)),
     window("-1/4", 0, False, False)),
    ("critical-n3-mass", P(3, rat(1, 3), rat(11, 7)),
     window("-1/3", "-1/3", True, True)),
    ("critical-n3-energy", P(3, rat(3, 4), rat(8, 3)),
     window("-1/4", "-1/4", True, True)),
    ("critical-high-dim", P(4, rat(1, 2), rat(4, 3)),
     window("-1/2", "-1/6", True, False)),
    ("critical-high-dim", P(5, rat(3, 8), rat(16, 17)),
     window("-6/17", "-1/4", False, False)),
    ("critical-high-dim", P(5, rat(1, 2), rat(1)),
     window("-1/2", "-1/8", True, False)),
    ("critical-high-dim", P(5, rat(5, 8), rat(16, 15)),
     window("-5/8", 0, True, False)),
    ("critical-high-dim", P(6, rat(2, 5), rat(10, 13)),
     window("-4/13", "-1/5", False, False)),
    ("critical-high-dim", P(6, rat(1, 2), rat(4, 5)),
     window("-2/5", "-1/10", False, False)),
]


@pytest.mark.parametrize(
    "scenario_id, params, expected",
    FEASIBLE_ANCHORS,
    ids=[f"{sid}-{p.n}-{p.s}" for sid, p, _ in FEASIBLE_ANCHORS],
)
def test_feasible_anchor(scenario_id, params, expected):
    verdict = feasibility(scenario_id, params)
    assert verdict.feasible
    assert verdict.certificate is None
    system = build_scenario(scenario_id, params)
    assert check_assignment(system, verdict.witness) == []
    assert sigma_window(scenario_id, params) == expected


# -- infeasible anchors -----------------------------------------------------

INFEASIBLE_ANCHORS = [
    ("subcritical-usual", P(3, rat(1, 2), rat(2)),
     ("bilinear p2", "bilinear p2 lower", "nonsharp time sum (gamma,rho)x(q,r)",
      "pair-sum scaling (gamma,rho)x(q,r)", "pin r", "pin rho")),
    ("subcritical-usual", P(3, rat(7, 8), rat(1)),
     ("bilinear p2", "bilinear p2 upper", "pin r")),
    ("subcritical-better", P(4, rat(1, 2), rat(3, 2)),
     ("bilinear p2", "bilinear p2 lower", "nonsharp time sum (gamma,rho)x(q,r)",
      "pair-sum scaling (gamma,rho)x(q,r)", "pin r", "pin rho")),
    ("critical-n3-mass", P(3, rat(1, 4), rat(7, 5)),
     ("b window lower", "b window upper")),
    ("critical-n3-mass", P(3, rat(1, 2), rat(2)),
     ("nonsharp time sum (a,b)x(q,r)", "pin a", "pin q")),
    ("critical-n3-energy", P(3, rat(1, 2), rat(2)),
     ("bilinear p2", "bilinear p2 lower", "pin r", "pin sigma")),
    ("critical-n3-energy", P(3, rat(1), rat(4)),
     ("bilinear sigma upper", "pin sigma")),
    ("critical-high-dim", P(4, rat(3, 10), rat(20, 17)),
     ("pin r", "pin rho", "sharp balance (rho vs r) (gamma,rho)x(lambda,r)",
      "sobolev embedding")),
]


@pytest.mark.parametrize(
    "scenario_id, params, certificate",
    INFEASIBLE_ANCHORS,
    ids=[f"{sid}-{p.n}-{p.s}" for sid, p, _ in INFEASIBLE_ANCHORS],
)
def test_infeasible_anchor(scenario_id, params, certificate):
    verdict = feasibility(scenario_id, params)
    assert not verdict.feasible
    assert verdict.witness is None
    assert verdict.certificate == certificate
    assert sigma_window(scenario_id, params).is_empty()


@pytest.mark.parametrize(
    "scenario_id, params, certificate",
    INFEASIBLE_ANCHORS,
    ids=[f"{sid}-{p.n}-{p.s}" for sid, p, _ in INFEASIBLE_ANCHORS],
)
def test_certificate_subset_alone_is_infeasible(scenario_id, params, certificate):
    system = build_scenario(scenario_id, params)
    kept = [c for c in system.constraints if c.label in certificate]
    assert {c.label for c in kept} == set(certificate)
    assert not is_feasible(system.with_constraints(kept)).feasible


def test_holder_better_is_infeasible_at_the_documented_point():
    verdict = feasibility("holder-better", P(3, rat(1, 2), rat(9, 10)))
    assert not verdict.feasible
    assert "bilinear sigma upper" in verdict.certificate


@pytest.mark.parametrize(
    "scenario_id, params",
    [(sid, p) for sid, p, _ in INFEASIBLE_ANCHORS],
    ids=[f"{sid}-{p.n}-{p.s}" for sid, p, _ in INFEASIBLE_ANCHORS],
)
def test_oracle_confirms_infeasibility(scenario_id, params):
    assert not lp_feasible(build_scenario(scenario_id, params)).feasible


# -- feasibility cuts along the critical curves -----------------------------


def n2_power(s):
    return (2 + 2 * s) / (2 - 2 * s)


@pytest.mark.parametrize("k", range(1, 10))
def test_low_regularity_planar_cut(k):
    s = rat(k, 10)
    verdict = feasibility("critical-n2-low", P(2, s, n2_power(s)))
    assert verdict.feasible == (s < rat(1, 2))


@pytest.mark.parametrize("k", range(1, 10))
def test_high_regularity_planar_scenario_always_works(k):
    s = rat(k, 10)
    assert feasibility("critical-n2-high", P(2, s, n2_power(s))).feasible


@pytest.mark.parametrize("k", range(1, 10))
def test_mass_critical_cut(k):
    s = rat(k, 10)
    alpha = (3 + 2 * s) / (3 - 2 * s)
    verdict = feasibility("critical-n3-mass", P(3, s, alpha))
    assert verdict.feasible == (rat(1, 4) < s < rat(1, 2))


@pytest.mark.parametrize("k", range(1, 10))
def test_energy_critical_cut(k):
    s = rat(k, 10)
    alpha = 4 / (3 - 2 * s)
    verdict = feasibility("critical-n3-energy", P(3, s, alpha))
    assert verdict.feasible == (rat(1, 2) < s < 1)


# -- window reports ---------------------------------------------------------


def test_report_agreement_at_the_reference_point():
    report = sigma_report("subcritical-usual", P(3, rat(1, 2), rat(3, 2)))
    assert report.agree
    assert report.note is None
    assert report.engine == report.closed_form
    assert report.engine == window("-1/2", 0, True, False)


def test_high_regularity_planar_variant_below_one_half():
    report = sigma_report("critical-n2-high", P(2, rat(1, 4), rat(5, 3)))
    assert report.agree
    assert report.engine == window("-1/4", 0, True, False)
    assert report.closed_form == window("-3/4", 0, False, False)
    assert "embedding trims" in report.note


def test_holder_better_variant_closes_the_lower_arm():
    report = sigma_report("holder-better", P(3, rat(1, 5), rat(9, 10)))
    assert report.agree
    assert report.engine == window("-1/80", 0, True, False)
    assert "closed" in report.note


def test_closed_form_matches_engine_for_every_feasible_anchor():
    for scenario_id, params, expected in FEASIBLE_ANCHORS:
        report = sigma_report(scenario_id, params)
        assert report.agree, (scenario_id, params)
        assert report.engine == expected
