"""Proof scenarios: parameter guards plus constraint-system builders.

Each scenario encodes one uniqueness argument as an affine constraint
system over the exponent-reciprocal vocabulary, at fixed rational
problem parameters ``(n, s, alpha)``.  Feasibility of the system means
the argument's exponent bookkeeping closes at those parameters, and the
projection of the feasible set onto ``sigma`` is the window of auxiliary
regularities the argument tolerates.

A builder pins every exponent the argument fixes outright (rows labeled
``pin ...``), keeps the genuinely free exponents symbolic, and emits the
admissibility, duality, chain-rule and product-estimate rows through the
shared helpers.  Guards check only the structural applicability of the
argument (dimension, regularity range, shape of the power); whether the
argument actually closes is always left to the feasibility engine.

Next to the engine path, :func:`closed_form_sigma_window` recomputes
each window from hand-derived endpoint formulas using interval
arithmetic and no elimination at all.  The two routes must agree, and
the verification suites compare them point by point; the two places
where the derivation is known to sharpen an endpoint are enumerated in
:data:`WINDOW_VARIANT_NOTES` and served by
:func:`accepted_sigma_windows`.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .constraints import (
    ConstraintSystem,
    Verdict,
    con,
    const,
    is_feasible,
    project_interval,
    term,
)
from .exact import (
    Bound,
    Interval,
    IntervalSet,
    Q,
    lower_max,
    rat,
    upper_min,
)
from .strichartz import (
    AdmissibilityMode,
    acceptability_constraints,
    pair_admissibility_constraints,
)

_HALF = rat(1, 2)


class ScenarioNotApplicable(ValueError):
    """The requested scenario does not cover these problem parameters."""


@dataclass(frozen=True, slots=True)
class ProblemParams:
    """Problem parameters: dimension, regularity and nonlinearity power.

    ``s`` and ``alpha`` are coerced to exact rationals; the admitted box
    is ``n >= 2``, ``0 <= s <= n/2`` and ``alpha >= 0``.  Individual
    scenarios restrict further through their guards.
    """

    n: int
    s: Q
    alpha: Q

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise ValueError("dimension must be an integer")
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        object.__setattr__(self, "s", rat(self.s))
        object.__setattr__(self, "alpha", rat(self.alpha))
        if not 0 <= self.s <= rat(self.n, 2):
            raise ValueError("regularity must lie in [0, n/2]")
        if self.alpha < 0:
            raise ValueError("power must be nonnegative")


# --------------------------------------------------------------------------
# shared row groups
# --------------------------------------------------------------------------


def _product_rows(rho, p1, p2, p3, r) -> list:
    """Duality splittings 1/rho' = 1/p1 + 1/p2 = 1/p3 + 1/r."""
    return [
        con(p1 + p2 + rho - 1, "=", "product identity (p1,p2)"),
        con(p3 + r + rho - 1, "=", "product identity (p3,r)"),
    ]


def _lipschitz_rows(p: ProblemParams, k: Q, p1, l, sigma) -> list:
    """Chain rule for a locally Lipschitz power: split p1 and embed."""
    return [
        con(p1 - (p.alpha - 1) * k - l, "=", "chain split"),
        con(-sigma - p.s, "<=", "sobolev embedding"),
    ]


def _bilinear_rows(sigma, rho, r, p1, p2, p3, *, besov: bool) -> list:
    """Hypotheses of the product estimate in its Besov or Sobolev form.

    The Besov form caps the inner exponent reciprocal at 1/2, the
    Sobolev form at 1; everything else is shared.
    """
    rows = [
        con(-sigma - 1, "<", "bilinear sigma lower"),
        con(sigma, "<", "bilinear sigma upper"),
    ]
    for name, expr in (("rho", rho), ("r", r), ("p1", p1), ("p3", p3)):
        rows.append(con(-expr, "<", f"bilinear range {name} lower"))
        rows.append(con(expr - 1, "<", f"bilinear range {name} upper"))
    rows.append(con(-p2, "<", "bilinear p2 lower"))
    rows.append(con(p2 - (_HALF if besov else 1), "<=", "bilinear p2 upper"))
    return rows


# --------------------------------------------------------------------------
# subcritical builders (shared by the Lipschitz and Hoelder variants)
# --------------------------------------------------------------------------

_USUAL_VARS_LIP = (
    "rho_inv", "r_inv", "p1_inv", "p2_inv", "p3_inv", "l_inv",
    "gamma_inv", "q_inv", "sigma",
)
_USUAL_VARS_HOL = (
    "rho_inv", "r_inv", "p1_inv", "p2_inv", "p3_inv",
    "gamma_inv", "q_inv", "sigma",
)
_BETTER_VARS_LIP = (
    "rho_inv", "r_inv", "p1_inv", "p2_inv", "p3_inv", "l_inv",
    "lambda_inv", "gamma_inv", "q_inv", "sigma",
)
_BETTER_VARS_HOL = (
    "rho_inv", "r_inv", "p1_inv", "p2_inv", "p3_inv",
    "lambda_inv", "gamma_inv", "q_inv", "sigma",
)


def _usual_system(p: ProblemParams, *, lipschitz: bool) -> ConstraintSystem:
    """The embedding choice of rho: the difference inherits s - n/2 scaling."""
    n, s, alpha = p.n, p.s, p.alpha
    k = (n - 2 * s) / (2 * n)
    ak = alpha * k
    sigma = term("sigma")
    rho, r = term("rho_inv"), term("r_inv")
    p1, p2, p3 = term("p1_inv"), term("p2_inv"), term("p3_inv")
    gamma, q = term("gamma_inv"), term("q_inv")

    rows = [
        con(rho - (sigma / n + _HALF - s / n), "=", "pin rho"),
        con(r - (_HALF - sigma / n + s / n - ak), "=", "pin r"),
        con(p1 - (ak - sigma / n), "=", "pin p1"),
        con(p3 - ak, "=", "pin p3"),
        con(p2 - r - sigma / n, "=", "bilinear p2"),
    ]
    if lipschitz:
        l = term("l_inv")
        rows.append(con(l - (_HALF - s / n - sigma / n), "=", "pin l"))
        rows += _product_rows(rho, p1, p2, p3, r)
        rows += _lipschitz_rows(p, k, p1, l, sigma)
    else:
        rows += _product_rows(rho, p1, p2, p3, r)
        rows.append(con(-sigma - alpha * s, "<", "holder condition"))
    rows += pair_admissibility_constraints(
        n, gamma, rho, q, r,
        AdmissibilityMode.NON_SHARP, besov=lipschitz,
        g_tag="(gamma,rho)", q_tag="(q,r)", strict_acceptability=True,
    )
    rows += _bilinear_rows(sigma, rho, r, p1, p2, p3, besov=lipschitz)
    names = _USUAL_VARS_LIP if lipschitz else _USUAL_VARS_HOL
    return ConstraintSystem.make(names, rows)


def _better_system(p: ProblemParams, *, lipschitz: bool) -> ConstraintSystem:
    """The improved choice of rho: the difference gains two derivatives.

    On top of the main admissible pair this argument runs the a priori
    bound through a second, sharp-scaling pair ``(lambda, p)`` whose
    space exponent is forced by duality, so those rows are spelled out
    by hand here rather than through the pair helper (the acceptability
    rows for ``(gamma, rho)`` are already present).
    """
    n, s, alpha = p.n, p.s, p.alpha
    k = (n - 2 * s) / (2 * n)
    ak = alpha * k
    half_n = rat(n, 2)
    sigma = term("sigma")
    rho, r = term("rho_inv"), term("r_inv")
    p1, p2, p3 = term("p1_inv"), term("p2_inv"), term("p3_inv")
    lam, gamma, q = term("lambda_inv"), term("gamma_inv"), term("q_inv")

    rows = [
        con(rho - (sigma / n + _HALF - s / n + ak - rat(2, n)), "=", "pin rho"),
        con(r - (_HALF + s / n + rat(2, n) - 2 * ak - sigma / n), "=", "pin r"),
        con(p1 - (ak - sigma / n), "=", "pin p1"),
        con(p3 - ak, "=", "pin p3"),
        con(p2 - r - sigma / n, "=", "bilinear p2"),
    ]
    if lipschitz:
        l = term("l_inv")
        rows.append(con(l - (_HALF - s / n - sigma / n), "=", "pin l"))
        rows += _product_rows(rho, p1, p2, p3, r)
        rows += _lipschitz_rows(p, k, p1, l, sigma)
    else:
        rows += _product_rows(rho, p1, p2, p3, r)
        rows.append(con(-sigma - alpha * s, "<", "holder condition"))
    rows += pair_admissibility_constraints(
        n, gamma, rho, q, r,
        AdmissibilityMode.NON_SHARP, besov=lipschitz,
        g_tag="(gamma,rho)", q_tag="(q,r)", strict_acceptability=True,
    )
    rows.append(
        con((half_n + rat(2, n) - 2) / (n - 1) - rho, "<", "rho window lower")
    )
    rows.append(con(rho - rat(n - 2, 2 * (n - 1)), "<", "rho window upper"))

    p_space = 1 - sigma / n - (alpha + 1) * k
    tag = "(gamma,rho)x(lambda,p)"
    rows += acceptability_constraints(n, lam, p_space, "(lambda,p)", True)
    rows.append(con(lam + gamma - 1, "=", f"sharp time sum {tag}"))
    rows.append(
        con(lam + gamma - half_n * (1 - p_space - rho), "=", f"pair-sum scaling {tag}")
    )
    rows.append(
        con((half_n - 1) * p_space - half_n * rho, "<", f"sharp balance (r vs rho) {tag}")
    )
    rows.append(
        con((half_n - 1) * rho - half_n * p_space, "<", f"sharp balance (rho vs r) {tag}")
    )
    rows.append(con(p_space - lam, "<=", f"sharp order (r vs q) {tag}"))
    rows.append(con(rho - gamma, "<=", f"sharp order (rho vs gamma) {tag}"))
    if lipschitz:
        rows.append(con(lam - _HALF, "<=", "besov time cap (lambda,p)"))
    rows += _bilinear_rows(sigma, rho, r, p1, p2, p3, besov=lipschitz)
    names = _BETTER_VARS_LIP if lipschitz else _BETTER_VARS_HOL
    return ConstraintSystem.make(names, rows)


# --------------------------------------------------------------------------
# critical builders
# --------------------------------------------------------------------------

_N2_VARS = (
    "lambda_inv", "a_inv", "b_inv", "q_inv", "r_inv",
    "p1_inv", "p2_inv", "p3_inv", "l_inv", "eps", "sigma",
)


def _n2_system(p: ProblemParams, *, high: bool) -> ConstraintSystem:
    """Scale-invariant power in dimension 2, in two regularity regimes.

    Every exponent is pinned along a one-parameter family indexed by a
    small ``eps``; the low regime sits just above ``sigma = -s``, the
    high regime just above ``sigma = s - 1``.
    """
    s = p.s
    sigma, eps = term("sigma"), term("eps")
    lam, a, b = term("lambda_inv"), term("a_inv"), term("b_inv")
    q, r = term("q_inv"), term("r_inv")
    p1, p2, p3, l = term("p1_inv"), term("p2_inv"), term("p3_inv"), term("l_inv")

    if high:
        rows = [
            con(sigma - (s - 1) - 2 * eps, "=", "pin sigma"),
            con(a - _HALF + eps / 2, "=", "pin a"),
            con(b - eps / 2, "=", "pin b"),
            con(lam - s / 2 - eps, "=", "pin lambda"),
            con(q - s / 2 - eps / 2, "=", "pin q"),
            con(r - _HALF + eps / 2 + s / 2, "=", "pin r"),
            con(p1 - 1 + eps, "=", "pin p1"),
            con(p3 - (_HALF + s / 2), "=", "pin p3"),
            con(p2 - r - sigma / 2, "=", "bilinear p2"),
            con(l - (1 - s) + eps, "=", "pin l"),
            con(-eps, "<", "eps window lower"),
            con(eps - (1 - s) / 2, "<", "eps window upper"),
        ]
    else:
        rows = [
            con(sigma + s - eps, "=", "pin sigma"),
            con(a - s / 2, "=", "pin a"),
            con(b - (_HALF - s), "=", "pin b"),
            con(lam - _HALF - eps / 2, "=", "pin lambda"),
            con(q - _HALF, "=", "pin q"),
            con(r - s / 2, "=", "pin r"),
            con(p1 - (_HALF + s) + eps / 2, "=", "pin p1"),
            con(p3 - (1 + s) / 2, "=", "pin p3"),
            con(p2 - r - sigma / 2, "=", "bilinear p2"),
            con(l - _HALF + eps / 2, "=", "pin l"),
            con(-eps, "<", "eps window lower"),
            con(eps - s, "<", "eps window upper"),
        ]

    k = (2 - 2 * s) / 4
    rows += _product_rows(b, p1, p2, p3, r)
    rows += _lipschitz_rows(p, k, p1, l, sigma)
    rows += pair_admissibility_constraints(
        2, a, b, lam, -sigma / 2,
        AdmissibilityMode.NON_SHARP, besov=False,
        g_tag="(a,b)", q_tag="(lambda,r2)", strict_acceptability=True,
    )
    tag = "(a,b)x(q,r)"
    rows += acceptability_constraints(2, q, r, "(q,r)", True)
    rows.append(con(-r, "<", "finite space exponent (q,r)"))
    rows.append(con(q + a - (1 - r - b), "=", f"pair-sum scaling {tag}"))
    rows.append(con(q + a - 1, "<", f"nonsharp time sum {tag}"))
    rows.append(con(-b, "<=", f"nonsharp balance (r vs rho) {tag}"))
    rows.append(con(-r, "<=", f"nonsharp balance (rho vs r) {tag}"))
    rows += _bilinear_rows(sigma, b, r, p1, p2, p3, besov=False)
    return ConstraintSystem.make(_N2_VARS, rows)


_MASS_VARS = (
    "a_inv", "lambda_inv", "q_inv", "r_inv",
    "p1_inv", "p2_inv", "p3_inv", "l_inv", "b_inv", "sigma",
)


def _mass_system(p: ProblemParams) -> ConstraintSystem:
    """Scale-invariant power in dimension 3 at sigma = -s, with b free."""
    s = p.s
    half_n = rat(3, 2)
    sigma = term("sigma")
    a, b, lam = term("a_inv"), term("b_inv"), term("lambda_inv")
    q, r = term("q_inv"), term("r_inv")
    p1, p2, p3, l = term("p1_inv"), term("p2_inv"), term("p3_inv"), term("l_inv")

    k = (3 - 2 * s) / 6
    rows = [
        con(sigma + s, "=", "pin sigma"),
        con(a + b - _HALF, "=", "pin a"),
        con(lam + s / 2 + b / 2 - 1, "=", "pin lambda"),
        con(q - rat(1, 4) - s / 2 - b, "=", "pin q"),
        con(r + b + s / 3 - _HALF, "=", "pin r"),
        con(p1 - (_HALF + 2 * s / 3), "=", "pin p1"),
        con(p3 - (_HALF + s / 3), "=", "pin p3"),
        con(p2 - r - sigma / 3, "=", "bilinear p2"),
        con(l - _HALF, "=", "pin l"),
        con((1 - s) / 3 - b, "<", "b window lower"),
        con(b - s, "<", "b window upper"),
        con(b - (_HALF - 2 * s / 3), "<", "b window cap"),
    ]
    rows += _product_rows(b, p1, p2, p3, r)
    rows += _lipschitz_rows(p, k, p1, l, sigma)
    rows += pair_admissibility_constraints(
        3, a, b, lam, const(s / 3),
        AdmissibilityMode.NON_SHARP, besov=False,
        g_tag="(a,b)", q_tag="(lambda,r2)", strict_acceptability=True,
    )
    tag = "(a,b)x(q,r)"
    rows += acceptability_constraints(3, q, r, "(q,r)", True)
    rows.append(con(q + a - half_n * (1 - r - b), "=", f"pair-sum scaling {tag}"))
    rows.append(con(q + a - 1, "<", f"nonsharp time sum {tag}"))
    rows.append(
        con((half_n - 1) * r - half_n * b, "<=", f"nonsharp balance (r vs rho) {tag}")
    )
    rows.append(
        con((half_n - 1) * b - half_n * r, "<=", f"nonsharp balance (rho vs r) {tag}")
    )
    rows += _bilinear_rows(sigma, b, r, p1, p2, p3, besov=False)
    return ConstraintSystem.make(_MASS_VARS, rows)


_ENERGY_VARS = (
    "gamma_inv", "rho_inv", "q_inv", "r_inv", "a_inv", "b_inv",
    "p1_inv", "p2_inv", "p3_inv", "l_inv", "sigma",
)


def _energy_system(p: ProblemParams) -> ConstraintSystem:
    """Energy-type power in dimension 3 at sigma = s - 1; fully pinned."""
    s = p.s
    half_n = rat(3, 2)
    sigma = term("sigma")
    gamma, rho = term("gamma_inv"), term("rho_inv")
    q, r = term("q_inv"), term("r_inv")
    a, b = term("a_inv"), term("b_inv")
    p1, p2, p3, l = term("p1_inv"), term("p2_inv"), term("p3_inv"), term("l_inv")

    k = (3 - 2 * s) / 6
    rows = [
        con(sigma - s + 1, "=", "pin sigma"),
        con(gamma - _HALF, "=", "pin gamma"),
        con(rho - rat(1, 6), "=", "pin rho"),
        con(q - _HALF, "=", "pin q"),
        con(r - rat(1, 6), "=", "pin r"),
        con(a - rat(1, 4), "=", "pin a"),
        con(b - rat(1, 3), "=", "pin b"),
        con(p1 - (1 - s / 3), "=", "pin p1"),
        con(p3 - rat(2, 3), "=", "pin p3"),
        con(p2 - r - sigma / 3, "=", "bilinear p2"),
        con(l - (rat(5, 6) - 2 * s / 3), "=", "pin l"),
    ]
    rows += _product_rows(rho, p1, p2, p3, r)
    rows += _lipschitz_rows(p, k, p1, l, sigma)
    rows += pair_admissibility_constraints(
        3, gamma, rho, q, r,
        AdmissibilityMode.SHARP, besov=False,
        g_tag="(gamma,rho)", q_tag="(q,r)", strict_acceptability=True,
    )
    tag = "(a,b)x(q,r)"
    rows += acceptability_constraints(3, a, b, "(a,b)", True)
    rows.append(con(q + a - half_n * (1 - r - b), "=", f"pair-sum scaling {tag}"))
    rows.append(con(q + a - 1, "<", f"nonsharp time sum {tag}"))
    rows.append(
        con((half_n - 1) * r - half_n * b, "<=", f"nonsharp balance (r vs rho) {tag}")
    )
    rows.append(
        con((half_n - 1) * b - half_n * r, "<=", f"nonsharp balance (rho vs r) {tag}")
    )
    rows += _bilinear_rows(sigma, rho, r, p1, p2, p3, besov=False)
    return ConstraintSystem.make(_ENERGY_VARS, rows)


_HIGH_DIM_VARS_LIP = (
    "rho_inv", "r_inv", "p1_inv", "p2_inv", "p3_inv", "l_inv",
    "gamma_inv", "lambda_inv", "a_inv", "b_inv", "sigma",
)
_HIGH_DIM_VARS_HOL = (
    "rho_inv", "r_inv", "p1_inv", "p2_inv", "p3_inv",
    "gamma_inv", "lambda_inv", "a_inv", "b_inv", "sigma",
)


def _high_dim_system(p: ProblemParams) -> ConstraintSystem:
    """Energy-type power in dimension 4 and higher.

    One sharp pair carries the evolution bound and one non-sharp pair
    the a priori bound; the two share ``(lambda, r)``, so the second
    block writes its remaining rows by hand.  The power is Lipschitz
    exactly when ``s >= (n-4)/2``; below that the Hoelder chain rule
    replaces the split-and-embed rows.
    """
    n, s, alpha = p.n, p.s, p.alpha
    lipschitz = 2 * s >= n - 4
    half_n = rat(n, 2)
    k = (n - 2 * s) / (2 * n)
    sigma = term("sigma")
    rho, r = term("rho_inv"), term("r_inv")
    p1, p2, p3 = term("p1_inv"), term("p2_inv"), term("p3_inv")
    gamma, lam = term("gamma_inv"), term("lambda_inv")
    a, b = term("a_inv"), term("b_inv")

    rows = [
        con(rho - (sigma / n + _HALF - s / n), "=", "pin rho"),
        con(r - (_HALF - sigma / n - rat(2, n) + s / n), "=", "pin r"),
        con(p1 - (rat(2, n) - sigma / n), "=", "pin p1"),
        con(p3 - rat(2, n), "=", "pin p3"),
        con(p2 - r - sigma / n, "=", "bilinear p2"),
    ]
    if lipschitz:
        l = term("l_inv")
        rows.append(con(l - _HALF + (sigma + s) / n, "=", "pin l"))
        rows += _product_rows(rho, p1, p2, p3, r)
        rows += _lipschitz_rows(p, k, p1, l, sigma)
    else:
        rows += _product_rows(rho, p1, p2, p3, r)
        rows.append(con(-sigma - alpha * s, "<", "holder condition"))
    rows += pair_admissibility_constraints(
        n, gamma, rho, lam, r,
        AdmissibilityMode.SHARP, besov=False,
        g_tag="(gamma,rho)", q_tag="(lambda,r)", strict_acceptability=True,
    )
    tag = "(a,b)x(lambda,r)"
    rows += acceptability_constraints(n, a, b, "(a,b)", True)
    rows.append(con(lam + a - half_n * (1 - r - b), "=", f"pair-sum scaling {tag}"))
    rows.append(con(lam + a - 1, "<", f"nonsharp time sum {tag}"))
    rows.append(
        con((half_n - 1) * r - half_n * b, "<=", f"nonsharp balance (r vs rho) {tag}")
    )
    rows.append(
        con((half_n - 1) * b - half_n * r, "<=", f"nonsharp balance (rho vs r) {tag}")
    )
    rows.append(con(rho - b, "<", "b window lower"))
    rows.append(con(b - _HALF, "<", "b window upper"))
    rows += _bilinear_rows(sigma, rho, r, p1, p2, p3, besov=False)
    names = _HIGH_DIM_VARS_LIP if lipschitz else _HIGH_DIM_VARS_HOL
    return ConstraintSystem.make(names, rows)


# --------------------------------------------------------------------------
# guards and registry
# --------------------------------------------------------------------------


def _guard_subcritical(p: ProblemParams) -> str | None:
    if p.n < 3:
        return "needs dimension 3 or higher"
    if not 0 < p.s < 1:
        return "needs regularity strictly between 0 and 1"
    if p.alpha < 1:
        return "needs a power of at least 1"
    return None


def _guard_holder(p: ProblemParams) -> str | None:
    if p.n < 3:
        return "needs dimension 3 or higher"
    if not 0 < p.s < 1:
        return "needs regularity strictly between 0 and 1"
    if not 0 < p.alpha < 1:
        return "needs a power strictly between 0 and 1"
    return None


def _guard_n2(p: ProblemParams) -> str | None:
    if p.n != 2:
        return "needs dimension 2"
    if not 0 < p.s < 1:
        return "needs regularity strictly between 0 and 1"
    if p.alpha != (2 + 2 * p.s) / (2 - 2 * p.s):
        return "needs the scale-invariant power (n+2s)/(n-2s)"
    return None


def _guard_mass(p: ProblemParams) -> str | None:
    if p.n != 3:
        return "needs dimension 3"
    if not 0 < p.s < rat(3, 2):
        return "needs regularity strictly between 0 and n/2"
    if p.alpha != (3 + 2 * p.s) / (3 - 2 * p.s):
        return "needs the scale-invariant power (n+2s)/(n-2s)"
    return None


def _guard_energy(p: ProblemParams) -> str | None:
    if p.n != 3:
        return "needs dimension 3"
    if not 0 < p.s < rat(3, 2):
        return "needs regularity strictly between 0 and n/2"
    if p.alpha != 4 / (3 - 2 * p.s):
        return "needs the energy-type power 4/(n-2s)"
    return None


def _guard_high_dim(p: ProblemParams) -> str | None:
    if p.n < 4:
        return "needs dimension 4 or higher"
    if not 0 < p.s < rat(p.n, 2):
        return "needs regularity strictly between 0 and n/2"
    if p.alpha != 4 / (p.n - 2 * p.s):
        return "needs the energy-type power 4/(n-2s)"
    return None


@dataclass(frozen=True, slots=True)
class Scenario:
    """One uniqueness argument: an id, a guard and a system builder."""

    id: str
    summary: str
    guard: Callable[[ProblemParams], str | None]
    builder: Callable[[ProblemParams], ConstraintSystem]

    def applies(self, params: ProblemParams) -> bool:
        return self.guard(params) is None


_ALL_SCENARIOS = (
    Scenario(
        "subcritical-usual",
        "Lipschitz power, embedding choice of the auxiliary space",
        _guard_subcritical,
        lambda p: _usual_system(p, lipschitz=True),
    ),
    Scenario(
        "subcritical-better",
        "Lipschitz power, improved-regularity choice of the auxiliary space",
        _guard_subcritical,
        lambda p: _better_system(p, lipschitz=True),
    ),
    Scenario(
        "holder-usual",
        "Hoelder power, embedding choice of the auxiliary space",
        _guard_holder,
        lambda p: _usual_system(p, lipschitz=False),
    ),
    Scenario(
        "holder-better",
        "Hoelder power, improved-regularity choice of the auxiliary space",
        _guard_holder,
        lambda p: _better_system(p, lipschitz=False),
    ),
    Scenario(
        "critical-n2-low",
        "scale-invariant power in dimension 2, window above -s",
        _guard_n2,
        lambda p: _n2_system(p, high=False),
    ),
    Scenario(
        "critical-n2-high",
        "scale-invariant power in dimension 2, window above s-1",
        _guard_n2,
        lambda p: _n2_system(p, high=True),
    ),
    Scenario(
        "critical-n3-mass",
        "scale-invariant power in dimension 3 at sigma = -s",
        _guard_mass,
        _mass_system,
    ),
    Scenario(
        "critical-n3-energy",
        "energy-type power in dimension 3 at sigma = s-1",
        _guard_energy,
        _energy_system,
    ),
    Scenario(
        "critical-high-dim",
        "energy-type power in dimension 4 and higher",
        _guard_high_dim,
        _high_dim_system,
    ),
)

SCENARIOS: dict[str, Scenario] = {sc.id: sc for sc in _ALL_SCENARIOS}


def get_scenario(scenario_id: str) -> Scenario:
    try:
        return SCENARIOS[scenario_id]
    except KeyError:
        known = ", ".join(SCENARIOS)
        raise ValueError(f"unknown scenario {scenario_id!r} (known: {known})") from None


def applicable_scenarios(params: ProblemParams) -> tuple[str, ...]:
    """Ids of the scenarios whose guards admit these parameters."""
    return tuple(sc.id for sc in _ALL_SCENARIOS if sc.applies(params))


def build_scenario(scenario_id: str, params: ProblemParams) -> ConstraintSystem:
    sc = get_scenario(scenario_id)
    reason = sc.guard(params)
    if reason is not None:
        raise ScenarioNotApplicable(f"{sc.id}: {reason}")
    return sc.builder(params)


def feasibility(scenario_id: str, params: ProblemParams) -> Verdict:
    """Decide the scenario at these parameters, with witness or certificate."""
    return is_feasible(build_scenario(scenario_id, params))


def sigma_window(scenario_id: str, params: ProblemParams) -> IntervalSet:
    """The exact set of admitted auxiliary regularities sigma."""
    return project_interval(build_scenario(scenario_id, params), "sigma")


# --------------------------------------------------------------------------
# closed-form windows
# --------------------------------------------------------------------------

WINDOW_VARIANT_NOTES: dict[str, str] = {
    "holder-better": (
        "the balance-derived lower arm comes out closed in the engine, "
        "one point more than the strict form"
    ),
    "critical-n2-high": (
        "below s = 1/2 the embedding trims the window to [-s, 0), "
        "a subset of the one-parameter sweep (s-1, 0)"
    ),
}


def _window(lowers, uppers) -> IntervalSet:
    lo = Bound.neg_inf()
    for bnd in lowers:
        lo = lower_max(lo, bnd)
    hi = Bound.pos_inf()
    for bnd in uppers:
        hi = upper_min(hi, bnd)
    return IntervalSet.from_intervals([Interval(lo, hi)])


def _cf_subcritical_usual(p: ProblemParams) -> IntervalSet:
    n, s, alpha = p.n, p.s, p.alpha
    m = alpha * (n - 2 * s)
    if not (2 * s <= m and m < 4 and m < n + 2 * s):
        return IntervalSet.empty()
    t = m / 4
    lowers = [
        Bound.closed_at(-s),
        Bound.closed_at(s - rat(n, 2 * (n - 1)) - (n - 2) * m / (4 * (n - 1))),
        Bound.open_at(s - _HALF - t),
        Bound.open_at(s - 2 * t),
        Bound.open_at(s - rat(n, 2)),
        Bound.open_at(-1),
    ]
    uppers = [
        Bound.closed_at(s + rat(n, 2 * (n - 1)) - n * m / (4 * (n - 1))),
        Bound.open_at(s + _HALF - t),
        Bound.open_at(rat(0)),
    ]
    return _window(lowers, uppers)


def _w2_w3(p: ProblemParams) -> tuple[Q, Q]:
    """Shared endpoint formulas of the improved-rho windows."""
    n, s = p.n, p.s
    m = p.alpha * (n - 2 * s)
    base = s + rat(3 * n - 4, 2 * (n - 1))
    return base - (3 * n - 4) * m / (4 * (n - 1)), base - m / 2


def _cf_subcritical_better(p: ProblemParams, *, _unused=None) -> IntervalSet:
    n, s = p.n, p.s
    m = p.alpha * (n - 2 * s)
    if not (2 < m and m < 4 and s + 2 <= m and 2 * m < n + 2 * s + 4):
        return IntervalSet.empty()
    w2, w3 = _w2_w3(p)
    lowers = [Bound.closed_at(-s), Bound.closed_at(w2), Bound.open_at(-1)]
    uppers = [Bound.open_at(w3), Bound.open_at(rat(0))]
    return _window(lowers, uppers)


def _cf_holder_usual(p: ProblemParams) -> IntervalSet:
    n, s, alpha = p.n, p.s, p.alpha
    m = alpha * (n - 2 * s)
    if not (m < 4 and m < n + 2 * s):
        return IntervalSet.empty()
    lowers = [
        Bound.closed_at(s - rat(n, 2 * (n - 1)) - (n - 2) * m / (4 * (n - 1))),
        Bound.open_at(s - m / 2),
        Bound.open_at(s - rat(n, 2)),
        Bound.open_at(-alpha * s),
        Bound.open_at(-1),
    ]
    uppers = [
        Bound.closed_at(s + rat(n, 2 * (n - 1)) - n * m / (4 * (n - 1))),
        Bound.open_at(rat(0)),
    ]
    return _window(lowers, uppers)


def _cf_holder_better(p: ProblemParams, *, closed_arm: bool = False) -> IntervalSet:
    n, s, alpha = p.n, p.s, p.alpha
    m = alpha * (n - 2 * s)
    if not (m < 4 and 2 * m >= 2 * s + 4 - n and 2 * m < n + 2 * s + 4):
        return IntervalSet.empty()
    w2, w3 = _w2_w3(p)
    arm = Bound.closed_at(w2) if closed_arm else Bound.open_at(w2)
    lowers = [
        Bound.open_at(s + 2 - m),
        Bound.open_at(-alpha * s),
        arm,
        Bound.open_at(-1),
    ]
    uppers = [Bound.open_at(w3), Bound.open_at(rat(0))]
    return _window(lowers, uppers)


def _cf_n2_low(p: ProblemParams) -> IntervalSet:
    if not p.s < _HALF:
        return IntervalSet.empty()
    return _window([Bound.open_at(-p.s)], [Bound.open_at(rat(0))])


def _cf_n2_high(p: ProblemParams) -> IntervalSet:
    return _window([Bound.open_at(p.s - 1)], [Bound.open_at(rat(0))])


def _cf_mass(p: ProblemParams) -> IntervalSet:
    if not rat(1, 4) < p.s < _HALF:
        return IntervalSet.empty()
    return IntervalSet.singleton(-p.s)


def _cf_energy(p: ProblemParams) -> IntervalSet:
    if not _HALF < p.s < 1:
        return IntervalSet.empty()
    return IntervalSet.singleton(p.s - 1)


def _cf_high_dim(p: ProblemParams) -> IntervalSet:
    n, s = p.n, p.s
    if n + 2 * s <= 4:
        return IntervalSet.empty()
    if 2 * s >= n - 4:
        low = Bound.closed_at(-s)
    else:
        low = Bound.open_at(-4 * s / (n - 2 * s))
    lowers = [
        low,
        Bound.open_at(s - rat(3 * n - 4, 2 * (n - 1))),
        Bound.open_at(-1),
    ]
    uppers = [
        Bound.open_at(s - rat(n, 2 * (n - 1))),
        Bound.open_at(rat(0)),
    ]
    return _window(lowers, uppers)


_CLOSED_FORMS: dict[str, Callable[[ProblemParams], IntervalSet]] = {
    "subcritical-usual": _cf_subcritical_usual,
    "subcritical-better": _cf_subcritical_better,
    "holder-usual": _cf_holder_usual,
    "holder-better": _cf_holder_better,
    "critical-n2-low": _cf_n2_low,
    "critical-n2-high": _cf_n2_high,
    "critical-n3-mass": _cf_mass,
    "critical-n3-energy": _cf_energy,
    "critical-high-dim": _cf_high_dim,
}


def closed_form_sigma_window(scenario_id: str, params: ProblemParams) -> IntervalSet:
    """The sigma window from hand-derived endpoint formulas.

    This is a second, elimination-free route to the same set as
    :func:`sigma_window`: endpoint arms combined with interval
    arithmetic, plus the ground gates on the parameters.  Scenario
    guards apply as usual.
    """
    sc = get_scenario(scenario_id)
    reason = sc.guard(params)
    if reason is not None:
        raise ScenarioNotApplicable(f"{sc.id}: {reason}")
    return _CLOSED_FORMS[scenario_id](params)


def accepted_sigma_windows(
    scenario_id: str, params: ProblemParams
) -> tuple[IntervalSet, ...]:
    """All windows the engine is allowed to produce here.

    The first entry is always :func:`closed_form_sigma_window`.  For the
    two scenarios listed in :data:`WINDOW_VARIANT_NOTES` a sharpened
    variant is appended when it differs from the first entry.
    """
    stated = closed_form_sigma_window(scenario_id, params)
    variant: IntervalSet | None = None
    if scenario_id == "holder-better":
        variant = _cf_holder_better(params, closed_arm=True)
    elif scenario_id == "critical-n2-high":
        embed = IntervalSet.from_intervals(
            [Interval(Bound.closed_at(-params.s), Bound.pos_inf())]
        )
        variant = stated & embed
    if variant is None or variant == stated:
        return (stated,)
    return (stated, variant)


@dataclass(frozen=True, slots=True)
class SigmaWindowReport:
    """Engine window next to the closed-form window, with the comparison."""

    scenario_id: str
    engine: IntervalSet
    closed_form: IntervalSet
    agree: bool
    note: str | None

    @property
    def window(self) -> IntervalSet:
        return self.engine


def sigma_report(scenario_id: str, params: ProblemParams) -> SigmaWindowReport:
    """Compute the window both ways and flag any discrepancy.

    ``agree`` is true when the engine window equals the closed form or
    one of its accepted variants; ``note`` carries the variant
    explanation when a variant matched, and a discrepancy description
    when nothing did.
    """
    engine = sigma_window(scenario_id, params)
    accepted = accepted_sigma_windows(scenario_id, params)
    note: str | None = None
    agree = engine == accepted[0]
    if not agree and any(engine == other for other in accepted[1:]):
        agree = True
        note = WINDOW_VARIANT_NOTES[scenario_id]
    elif not agree:
        note = "engine window does not match the closed form"
    return SigmaWindowReport(scenario_id, engine, accepted[0], agree, note)
