"""Constraint systems: substitution, elimination, verdicts, projection."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniq_regions.constraints import (
    ConstraintSystem,
    check_assignment,
    con,
    const,
    fm_eliminate,
    is_feasible,
    project_interval,
    substitute_equalities,
    term,
)
from uniq_regions.exact import IntervalSet, rat
from uniq_regions.oracle import lp_feasible
from uniq_regions.verify import random_system

X, Y, Z = "q_inv", "r_inv", "sigma"


def system(variables, *rows):
    return ConstraintSystem.make(variables, rows)


# -- construction -----------------------------------------------------------


def test_unknown_variables_are_rejected():
    with pytest.raises(ValueError):
        ConstraintSystem.make(("banana",), ())
    with pytest.raises(ValueError):
        system((X,), con(term(Y) - 1, "<", "stray"))


def test_every_constraint_carries_a_label():
    with pytest.raises(ValueError):
        con(term(X), "<", "")


def test_expressions_drop_zero_coefficients():
    expr = term(X, 2) - term(X, 2) + term(Y)
    assert expr.vars() == (Y,)


# -- equality substitution --------------------------------------------------


def test_direct_substitution():
    s = system(
        (X, Y),
        con(term(X) - rat(1, 2), "=", "pin"),
        con(term(X) + term(Y) - 1, "<", "sum"),
    )
    sub = substitute_equalities(s)
    assert not sub.conflicts
    assert sub.solved == ((X, const(rat(1, 2))),)
    (row,) = sub.system.constraints
    assert row.rel == "<"
    assert row.expr.as_dict() == {Y: rat(1)}
    assert row.expr.const == rat(-1, 2)


def test_contradictory_pins_conflict():
    s = system(
        (X,),
        con(term(X) - rat(1, 2), "=", "first pin"),
        con(term(X) - rat(1, 3), "=", "second pin"),
    )
    sub = substitute_equalities(s)
    assert sub.conflicts
    verdict = is_feasible(s)
    assert not verdict.feasible
    assert verdict.certificate == ("first pin", "second pin")


def test_linear_solve_for_the_earliest_variable():
    s = system(
        (X, Y),
        con(term(X) + term(Y), "=", "balance"),
        con(term(X) - term(Y), "<=", "order"),
    )
    sub = substitute_equalities(s)
    assert sub.solved == ((X, -term(Y)),)
    (row,) = sub.system.constraints
    assert row.expr.as_dict() == {Y: rat(-2)}


# -- elimination ------------------------------------------------------------


def test_single_pair_elimination():
    s = system(
        (X, Y),
        con(term(X) - term(Y), "<", "below"),
        con(term(Y) - 1, "<", "cap"),
    )
    out = fm_eliminate(s, Y)
    assert out.variables == (X,)
    (row,) = out.constraints
    assert row.rel == "<"
    assert row.expr.as_dict() == {X: rat(1)}
    assert row.expr.const == rat(-1)
    assert row.parents == frozenset({"below", "cap"})


def test_strictness_propagates_into_ground_rows():
    s = system(
        (Y,),
        con(-term(Y), "<=", "lower"),
        con(term(Y), "<=", "upper"),
        con(term(Y), "<", "strict upper"),
    )
    out = fm_eliminate(s, Y)
    ground = [(c.rel, c.expr.const, c.ground_holds()) for c in out.constraints]
    assert ("<=", rat(0), True) in ground
    assert ("<", rat(0), False) in ground


def test_eliminate_rejects_equalities():
    s = system((X,), con(term(X), "=", "pin"))
    with pytest.raises(ValueError):
        fm_eliminate(s, X)


# -- verdicts ---------------------------------------------------------------


def test_open_unit_interval_midpoint():
    s = system(
        (X,),
        con(-term(X), "<", "positive"),
        con(term(X) - 1, "<", "below one"),
    )
    verdict = is_feasible(s)
    assert verdict.feasible
    assert verdict.witness == {X: rat(1, 2)}
    assert verdict.certificate is None


def test_empty_window_certificate():
    s = system(
        (X,),
        con(term(X), "<", "negative"),
        con(-term(X), "<=", "nonnegative"),
    )
    verdict = is_feasible(s)
    assert not verdict.feasible
    assert verdict.witness is None
    assert verdict.certificate == ("negative", "nonnegative")


def test_certificate_subset_is_itself_infeasible():
    s = system(
        (X, Y),
        con(term(X) - term(Y), "<", "order"),
        con(term(Y) - term(X), "<", "reversed"),
        con(term(X) - 9, "<=", "irrelevant cap"),
    )
    verdict = is_feasible(s)
    assert not verdict.feasible
    kept = [c for c in s.constraints if c.label in verdict.certificate]
    assert "irrelevant cap" not in verdict.certificate
    assert not is_feasible(s.with_constraints(kept)).feasible


# -- projection -------------------------------------------------------------


def test_projection_through_an_equality():
    s = system(
        (X, Y),
        con(-term(X), "<", "positive"),
        con(term(X) - 1, "<", "below one"),
        con(term(Y) - term(X), "=", "tie"),
    )
    assert project_interval(s, X) == IntervalSet.bounded(
        0, 1, lo_closed=False, hi_closed=False
    )


def test_projection_of_an_infeasible_system_is_empty():
    s = system(
        (X, Y),
        con(term(X), "<", "negative"),
        con(-term(X), "<", "positive"),
    )
    assert project_interval(s, Y) == IntervalSet.empty()


# -- assignment checking ----------------------------------------------------


def test_satisfying_assignment_has_no_violations():
    s = system((X,), con(term(X) - 1, "<", "cap"))
    assert check_assignment(s, {X: rat(1, 2)}) == []


def test_strict_boundary_is_a_violation():
    s = system((X,), con(term(X) - 1, "<", "cap"))
    (violation,) = check_assignment(s, {X: rat(1)})
    assert violation.label == "cap"
    assert violation.residual == rat(0)


def test_partial_assignments_are_rejected():
    s = system((X, Y), con(term(X) + term(Y), "<=", "sum"))
    with pytest.raises(ValueError):
        check_assignment(s, {X: rat(0)})


# -- randomized cross-checks ------------------------------------------------


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=120, deadline=None)
def test_elimination_agrees_with_the_simplex_oracle(seed):
    s = random_system(random.Random(seed))
    mine = is_feasible(s)
    oracle = lp_feasible(s)
    assert mine.feasible == oracle.feasible
    if mine.feasible:
        assert check_assignment(s, mine.witness) == []


@given(
    st.integers(min_value=0, max_value=10_000),
    st.fractions(min_value=-4, max_value=4, max_denominator=8),
)
@settings(max_examples=80, deadline=None)
def test_projection_matches_pin_and_test(seed, pin_frac):
    s = random_system(random.Random(seed))
    var = s.variables[0]
    pin = rat(pin_frac.numerator, pin_frac.denominator)
    shadow = project_interval(s, var)
    pinned = s.with_constraints(
        (*s.constraints, con(term(var) - pin, "=", "pin"))
    )
    assert shadow.contains(pin) == is_feasible(pinned).feasible


@given(st.integers(min_value=0, max_value=10_000), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_verdict_is_elimination_order_independent(seed, shuffler):
    s = random_system(random.Random(seed))
    baseline = is_feasible(s).feasible
    variables = list(s.variables)
    shuffler.shuffle(variables)
    permuted = ConstraintSystem.make(variables, s.constraints)
    assert is_feasible(permuted).feasible == baseline


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_derived_provenance_stays_within_input_labels(seed):
    s = random_system(random.Random(seed))
    labels = {c.label for c in s.constraints}
    sub = substitute_equalities(s)
    current = sub.system
    for var in current.variables:
        current = fm_eliminate(current, var)
    for row in current.constraints:
        assert row.parents
        assert row.parents <= labels
