"""Acceptability and admissibility of space-time exponent pairs.

A pair is stored by reciprocals: ``q_inv`` for the time exponent, ``r_inv``
for the space exponent, so the Lebesgue ranges q in [1, oo] and r in [2, oo]
become the boxes [0, 1] and [0, 1/2].

Acceptability for dimension n is the open region strictly below the line
``q_inv = n(1/2 - r_inv)`` with positive time reciprocal, together with the
isolated endpoint ``(q_inv, r_inv) = (0, 1/2)`` (time exponent infinity,
space exponent 2).  That endpoint makes the true acceptable set a genuine
disjunction, which no single affine conjunction can express; the trade-offs
among the three encodings used here are:

* :func:`is_acceptable` keeps the exact disjunction (point queries);
* :func:`admissibility_fragment` uses the CLOSURE encoding
  ``0 <= q_inv <= n(1/2 - r_inv)``, which adds only the segment
  ``{q_inv = n(1/2 - r_inv)}`` beyond the true set;
* scenario builders request the STRICT main branch
  ``0 < q_inv < n(1/2 - r_inv)``, which drops the endpoint but reproduces
  the open windows the inhomogeneous estimates actually need.

Admissibility of a pair of pairs ((gamma, rho), (q, r)) asks for
acceptability of both, the scaling balance

    1/q + 1/gamma = (n/2)(1 - 1/r - 1/rho),

finite space exponents when n = 2, optional Besov-side caps gamma, q >= 2,
and one of two regimes: NON_SHARP (time reciprocals summing below 1, with
weak cross balances between r and rho) or SHARP (sum exactly 1, strict
balances, and the orderings r <= q, rho <= gamma).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .constraints import Constraint, ConstraintSystem, LinExpr, con, term
from .exact import Q, rat

__all__ = [
    "SpaceTimePair",
    "AdmissibilityMode",
    "AdmissibilityReport",
    "is_acceptable",
    "admissibility",
    "admissibility_fragment",
    "acceptability_constraints",
    "pair_admissibility_constraints",
]

_HALF = Q(1, 2)


@dataclass(frozen=True, slots=True)
class SpaceTimePair:
    """Reciprocals of a space-time Lebesgue pair, validated to their boxes."""

    q_inv: Q
    r_inv: Q

    def __post_init__(self) -> None:
        q = rat(self.q_inv)
        r = rat(self.r_inv)
        object.__setattr__(self, "q_inv", q)
        object.__setattr__(self, "r_inv", r)
        if not 0 <= q <= 1:
            raise ValueError(f"time reciprocal {q} outside [0, 1]")
        if not 0 <= r <= _HALF:
            raise ValueError(f"space reciprocal {r} outside [0, 1/2]")


class AdmissibilityMode(enum.Enum):
    NON_SHARP = "non-sharp"
    SHARP = "sharp"


@dataclass(frozen=True, slots=True)
class AdmissibilityReport:
    """Outcome of the admissibility check.

    ``mode`` is the accepted regime, or None when anything failed; ``failed``
    lists the labels of every condition that did not hold.
    """

    mode: AdmissibilityMode | None
    failed: tuple[str, ...]
    besov: bool

    @property
    def admissible(self) -> bool:
        return self.mode is not None


def is_acceptable(n: int, pair: SpaceTimePair) -> bool:
    """Exact acceptability: the open main branch or the endpoint (0, 1/2)."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    if pair.q_inv == 0 and pair.r_inv == _HALF:
        return True
    return 0 < pair.q_inv < n * (_HALF - pair.r_inv)


def admissibility(
    n: int,
    gamma_rho: SpaceTimePair,
    q_r: SpaceTimePair,
    besov: bool = False,
) -> AdmissibilityReport:
    """Check the full admissibility package for one pair of pairs."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    failed: list[str] = []
    half_n = Q(n, 2)

    if not is_acceptable(n, gamma_rho):
        failed.append("acceptability (gamma,rho)")
    if not is_acceptable(n, q_r):
        failed.append("acceptability (q,r)")
    if q_r.q_inv + gamma_rho.q_inv != half_n * (1 - q_r.r_inv - gamma_rho.r_inv):
        failed.append("pair-sum scaling")
    if n == 2:
        if gamma_rho.r_inv == 0:
            failed.append("finite space exponent (gamma,rho)")
        if q_r.r_inv == 0:
            failed.append("finite space exponent (q,r)")
    if besov:
        if gamma_rho.q_inv > _HALF:
            failed.append("besov time cap (gamma,rho)")
        if q_r.q_inv > _HALF:
            failed.append("besov time cap (q,r)")

    time_sum = q_r.q_inv + gamma_rho.q_inv
    mode: AdmissibilityMode | None
    if time_sum < 1:
        mode = AdmissibilityMode.NON_SHARP
        if (half_n - 1) * q_r.r_inv > half_n * gamma_rho.r_inv:
            failed.append("nonsharp balance (r vs rho)")
        if (half_n - 1) * gamma_rho.r_inv > half_n * q_r.r_inv:
            failed.append("nonsharp balance (rho vs r)")
    elif time_sum == 1:
        mode = AdmissibilityMode.SHARP
        if not (half_n - 1) * q_r.r_inv < half_n * gamma_rho.r_inv:
            failed.append("sharp balance (r vs rho)")
        if not (half_n - 1) * gamma_rho.r_inv < half_n * q_r.r_inv:
            failed.append("sharp balance (rho vs r)")
        if q_r.r_inv > q_r.q_inv:
            failed.append("sharp order (r vs q)")
        if gamma_rho.r_inv > gamma_rho.q_inv:
            failed.append("sharp order (rho vs gamma)")
    else:
        mode = None
        failed.append("time sum at most 1")

    if failed:
        mode = None
    return AdmissibilityReport(mode, tuple(failed), besov)


# --------------------------------------------------------------------------
# constraint builders
# --------------------------------------------------------------------------


def acceptability_constraints(
    n: int,
    time: LinExpr,
    space: LinExpr,
    tag: str,
    strict: bool,
) -> list[Constraint]:
    """Affine acceptability rows for one pair given by expressions.

    ``strict`` selects the open main branch; otherwise the closure encoding
    is produced (see the module docstring for what each admits).  The box
    rows (time reciprocal at most 1, space reciprocal within [0, 1/2]) come
    along in both flavors.
    """
    rel = "<" if strict else "<="
    return [
        con(-time, rel, f"acceptability lower {tag}"),
        con(time - n * (_HALF - space), rel, f"acceptability line {tag}"),
        con(time - 1, "<=", f"time exponent range {tag}"),
        con(-space, "<=", f"space exponent lower {tag}"),
        con(space - _HALF, "<=", f"space exponent upper {tag}"),
    ]


def pair_admissibility_constraints(
    n: int,
    g_time: LinExpr,
    g_space: LinExpr,
    q_time: LinExpr,
    q_space: LinExpr,
    mode: AdmissibilityMode,
    besov: bool,
    g_tag: str,
    q_tag: str,
    strict_acceptability: bool,
) -> list[Constraint]:
    """All admissibility rows for a pair of pairs given as expressions.

    The combined tag on shared rows is ``{g_tag}x{q_tag}``.
    """
    pair_tag = f"{g_tag}x{q_tag}"
    half_n = Q(n, 2)
    rows: list[Constraint] = []
    rows += acceptability_constraints(n, g_time, g_space, g_tag, strict_acceptability)
    rows += acceptability_constraints(n, q_time, q_space, q_tag, strict_acceptability)
    rows.append(
        con(
            q_time + g_time - half_n * (1 - q_space - g_space),
            "=",
            f"pair-sum scaling {pair_tag}",
        )
    )
    if n == 2:
        rows.append(con(-g_space, "<", f"finite space exponent {g_tag}"))
        rows.append(con(-q_space, "<", f"finite space exponent {q_tag}"))
    if besov:
        rows.append(con(g_time - _HALF, "<=", f"besov time cap {g_tag}"))
        rows.append(con(q_time - _HALF, "<=", f"besov time cap {q_tag}"))

    if mode is AdmissibilityMode.NON_SHARP:
        rows.append(con(q_time + g_time - 1, "<", f"nonsharp time sum {pair_tag}"))
        rows.append(
            con(
                (half_n - 1) * q_space - half_n * g_space,
                "<=",
                f"nonsharp balance (r vs rho) {pair_tag}",
            )
        )
        rows.append(
            con(
                (half_n - 1) * g_space - half_n * q_space,
                "<=",
                f"nonsharp balance (rho vs r) {pair_tag}",
            )
        )
    else:
        rows.append(con(q_time + g_time - 1, "=", f"sharp time sum {pair_tag}"))
        rows.append(
            con(
                (half_n - 1) * q_space - half_n * g_space,
                "<",
                f"sharp balance (r vs rho) {pair_tag}",
            )
        )
        rows.append(
            con(
                (half_n - 1) * g_space - half_n * q_space,
                "<",
                f"sharp balance (rho vs r) {pair_tag}",
            )
        )
        rows.append(con(q_space - q_time, "<=", f"sharp order (r vs q) {pair_tag}"))
        rows.append(con(g_space - g_time, "<=", f"sharp order (rho vs gamma) {pair_tag}"))
    return rows


def admissibility_fragment(
    n: int,
    besov: bool,
    mode: AdmissibilityMode,
) -> ConstraintSystem:
    """Reusable admissibility block over the canonical four variables.

    Acceptability appears in CLOSURE form here, so the fragment admits the
    endpoint (q_inv, r_inv) = (0, 1/2) exactly like the point checker, at
    the price of also admitting two boundary pieces the point checker
    rejects: the segment ``q_inv = n(1/2 - r_inv)`` with ``q_inv > 0``, and
    the ray ``q_inv = 0`` with ``r_inv < 1/2``.  Scenario builders do not
    reuse this object; they request strict acceptability instead.
    """
    rows = pair_admissibility_constraints(
        n,
        term("gamma_inv"),
        term("rho_inv"),
        term("q_inv"),
        term("r_inv"),
        mode,
        besov,
        "(gamma,rho)",
        "(q,r)",
        strict_acceptability=False,
    )
    return ConstraintSystem.make(
        ("gamma_inv", "rho_inv", "q_inv", "r_inv"), rows
    )
