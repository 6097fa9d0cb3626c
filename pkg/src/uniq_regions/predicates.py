"""Closed-form region predicates, the threshold root, and chain audits.

The predicates answer, for exact rational ``(n, s, alpha)``, whether the
point lies in one of the stated uniqueness regions: the four theorem
regions proved through the scenario systems, the earlier literature
regions they are compared against, and the two lists of open cases.
Everything here is literal evaluation of displayed inequalities with
their stated strict or closed endpoints; nothing calls the feasibility
engine, which is what makes these usable as independent cross-checks.

Two numeric services live here as well: a certified rational enclosure
of the smallest root of the threshold quadratic
``P(s) = 4(n-1)s^2 - (2n^2+8n-8)s + n^2`` (the regularity floor of the
high-dimension critical region), and the bisection that rediscovers the
same threshold from scenario feasibility alone.  The chain auditor
checks the two stated inequality chains sample by sample and reports
which failures are masked by other binding terms.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

from .exact import Q, rat
from .scenarios import ProblemParams, feasibility

_HALF = rat(1, 2)


class UndecidableAtPrecision(Exception):
    """A comparison could not be settled at the requested tolerance.

    ``enclosure`` holds the certified rational bracket that the
    undecided quantity lies in; retrying with a tighter tolerance may
    settle the comparison.
    """

    def __init__(self, message: str, enclosure: tuple[Q, Q]):
        super().__init__(message)
        self.enclosure = enclosure


# --------------------------------------------------------------------------
# vacuous-bound helpers: None stands for +infinity
# --------------------------------------------------------------------------


def posdiv(num: Q, den: Q) -> Q | None:
    """``num/den`` read as a threshold: vacuous (None) when ``den <= 0``.

    Bounds of this shape come from inequalities multiplied by ``den``;
    when ``den`` is not positive the multiplication flips nothing to
    bound and the term stops binding.
    """
    if den <= 0:
        return None
    return rat(num) / den


def _min_terms(*terms: Q | None) -> Q | None:
    finite = [t for t in terms if t is not None]
    return min(finite) if finite else None


def _below(x: Q, bound: Q | None) -> bool:
    return bound is None or x < bound


# --------------------------------------------------------------------------
# the threshold quadratic
# --------------------------------------------------------------------------


def critical_quadratic(n: int, s: Q) -> Q:
    """P(s) = 4(n-1)s^2 - (2n^2+8n-8)s + n^2."""
    s = rat(s)
    return 4 * (n - 1) * s * s - (2 * n * n + 8 * n - 8) * s + n * n


def s_above_s0(n: int, s: Q) -> bool:
    """Whether a rational s in [0, 1] lies strictly above the smallest root.

    On [0, 1] the quadratic is positive before its smallest root and
    negative after (the larger root exceeds 1), so an exact sign test
    decides every rational without any enclosure.
    """
    return critical_quadratic(n, rat(s)) < 0


def s0(n: int, tol: Q = rat(1, 10**6)) -> tuple[Q, Q]:
    """Certified enclosure of the smallest root of the quadratic.

    Returns ``(lower, upper)`` with ``upper - lower <= tol``,
    ``P(lower) > 0`` and ``P(upper) < 0``, which pins the root strictly
    inside.  Bisection starts from ``[0, n^2/(2n^2+8n-8)]`` and widens
    the right end until the sign flips.  Should bisection ever land on
    the root exactly, the degenerate enclosure ``(root, root)`` is
    returned.
    """
    if n < 5:
        raise ValueError("the threshold quadratic governs dimensions 5 and up")
    tol = rat(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lo = rat(0)
    hi = rat(n * n, 2 * n * n + 8 * n - 8)
    while critical_quadratic(n, hi) > 0:
        hi = 2 * hi
    if critical_quadratic(n, hi) == 0:
        return (hi, hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        sign = critical_quadratic(n, mid)
        if sign > 0:
            lo = mid
        elif sign < 0:
            hi = mid
        else:
            return (mid, mid)
    return (lo, hi)


# --------------------------------------------------------------------------
# region predicates
# --------------------------------------------------------------------------


def _thm11(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n not in (3, 4, 5) or not 0 < s < 1:
        return False
    d = n - 2 * s
    lower = max(rat(1), 2 * s / d)
    upper = _min_terms(4 / d, (n + 2 * s) / d, (4 * s + 4 - rat(n, n - 1)) / d)
    return lower <= alpha and _below(alpha, upper)


def _thm12(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n < 3 or not 0 < s < 1:
        return False
    d = n - 2 * s
    if n == 3:
        upper = _min_terms(rat(1), posdiv(2 * s + rat(5, 2), 3 - 4 * s))
    else:
        upper = _min_terms(
            rat(1), 4 / d, posdiv(2 * s + 4 - rat(n, n - 1), n - 4 * s)
        )
    return 2 * s / d < alpha and _below(alpha, upper)


def _thm15(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if 2 * s >= n:
        return False
    if alpha != (n + 2 * s) / (n - 2 * s):
        return False
    return (n == 2 and 0 < s < 1) or (n == 3 and rat(1, 4) < s < _HALF)


def _thm16(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if 2 * s >= n or alpha != 4 / (n - 2 * s):
        return False
    if n == 3:
        return _HALF < s < 1
    if n == 4:
        return rat(1, 3) < s < 1
    if n >= 5:
        return s < 1 and s_above_s0(n, s)
    return False


def _kato(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if 2 * s >= n:
        return True
    d = n - 2 * s
    return 0 < alpha and _below(alpha, _min_terms(4 / d, (2 + 2 * s) / d))


def _furioli_terraneo(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n < 3 or 2 * s >= n:
        return False
    d = n - 2 * s
    lower = max(rat(1), 2 * s / d)
    upper = _min_terms(
        (2 + 4 * s) / d, 4 / d, (n + 2 * s) / d, (n + 2 - 2 * s) / d
    )
    return lower < alpha and _below(alpha, upper)


def _rogers(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n < 3 or 2 * s >= n:
        return False
    d = n - 2 * s
    upper = _min_terms((2 + 4 * s * (1 - rat(1, n))) / d, 4 / d)
    return (2 + 2 * s) / d <= alpha and _below(alpha, upper)


def _win_tsutsumi_sub(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n != 3 or not _HALF < s < 1:
        return False
    d = n - 2 * s
    lower = max((2 + 4 * s * (1 - rat(1, n))) / d, (n + 2 - 2 * s) / d)
    upper = _min_terms(4 / d, (n + 2 * s) / d)
    return lower <= alpha and _below(alpha, upper)


def _win_tsutsumi_crit(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if 2 * s >= n or alpha != 4 / (n - 2 * s):
        return False
    if n == 3:
        return _HALF < s < 1
    return n in (4, 5) and _HALF <= s < 1


def _cazenave_crit(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n < 3 or not 1 <= s or 2 * s >= n:
        return False
    d = n - 2 * s
    return alpha == _min_terms((n + 2 * s) / d, 4 / d)


def _open_sub(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if not 0 <= s < 1:
        return False
    d = n - 2 * s
    cases = []
    if n in (3, 4):
        lower = _min_terms(
            (4 * s + 4 - rat(n, n - 1)) / d,
            posdiv(2 * s + 4 - rat(n, n - 1), n - 4 * s),
        )
        upper = _min_terms(4 / d, (n + 2 * s) / d)
        cases.append(lower is not None and lower <= alpha and _below(alpha, upper))
    if n >= 5:
        lower = posdiv(2 * s + 4 - rat(n, n - 1), n - 4 * s)
        cases.append(lower is not None and lower <= alpha and alpha < 4 / d)
    if n >= 3 and s == 0:
        cases.append(rat(2, n) <= alpha and alpha < (4 - rat(n, n - 1)) / n)
    return any(cases)


def _open_crit(p: ProblemParams) -> bool:
    n, s, alpha = p.n, p.s, p.alpha
    if n == 2:
        return s == 0 and alpha == 1
    if 2 * s >= n:
        return False
    if n == 3:
        if alpha != (3 + 2 * s) / (3 - 2 * s):
            return False
        return 0 <= s <= rat(1, 4) or s == _HALF
    if alpha != 4 / (n - 2 * s):
        return False
    if n == 4:
        return 0 <= s <= rat(1, 3)
    return s < 1 and critical_quadratic(n, s) >= 0


@dataclass(frozen=True, slots=True)
class RegionPredicate:
    """One closed-form region: an id, a role, and the membership test."""

    id: str
    summary: str
    kind: str
    fn: Callable[[ProblemParams], bool]


_ALL_PREDICATES = (
    RegionPredicate(
        "thm11", "new subcritical range, Lipschitz powers", "theorem", _thm11
    ),
    RegionPredicate(
        "thm12", "new subcritical range, Hoelder powers", "theorem", _thm12
    ),
    RegionPredicate(
        "thm15", "new critical cases at the scale-invariant power", "theorem", _thm15
    ),
    RegionPredicate(
        "thm16", "new critical cases at the energy-type power", "theorem", _thm16
    ),
    RegionPredicate("kato", "classical subcritical uniqueness range", "literature", _kato),
    RegionPredicate(
        "furioli-terraneo",
        "uniqueness range in the homogeneous-space setting",
        "literature",
        _furioli_terraneo,
    ),
    RegionPredicate(
        "rogers",
        "uniqueness range via a generalized dispersive estimate",
        "literature",
        _rogers,
    ),
    RegionPredicate(
        "win-tsutsumi-sub",
        "improved dimension-3 subcritical range",
        "literature",
        _win_tsutsumi_sub,
    ),
    RegionPredicate(
        "win-tsutsumi-crit",
        "improved critical cases in dimensions 3 to 5",
        "literature",
        _win_tsutsumi_crit,
    ),
    RegionPredicate(
        "cazenave-crit",
        "classical critical uniqueness above regularity 1",
        "literature",
        _cazenave_crit,
    ),
    RegionPredicate("open-sub", "subcritical cases still open", "open", _open_sub),
    RegionPredicate("open-crit", "critical cases still open", "open", _open_crit),
)

PREDICATES: dict[str, RegionPredicate] = {pr.id: pr for pr in _ALL_PREDICATES}

_THEOREM_IDS = frozenset({"thm11", "thm12", "thm15", "thm16"})


def region_predicate(predicate_id: str, params: ProblemParams) -> bool:
    try:
        pred = PREDICATES[predicate_id]
    except KeyError:
        known = ", ".join(PREDICATES)
        raise ValueError(
            f"unknown predicate {predicate_id!r} (known: {known})"
        ) from None
    return pred.fn(params)


def theorem_predicate(predicate_id: str, params: ProblemParams) -> bool:
    if predicate_id not in _THEOREM_IDS:
        raise ValueError(f"{predicate_id!r} is not one of the theorem regions")
    return region_predicate(predicate_id, params)


def literature_predicate(predicate_id: str, params: ProblemParams) -> bool:
    if predicate_id in _THEOREM_IDS:
        raise ValueError(f"{predicate_id!r} is one of the theorem regions")
    return region_predicate(predicate_id, params)


# --------------------------------------------------------------------------
# threshold rediscovery from scenario feasibility
# --------------------------------------------------------------------------


def simplest_in(lo: Q, hi: Q) -> Q:
    """The rational with smallest denominator in the closed interval."""
    lo, hi = rat(lo), rat(hi)
    if hi < lo:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return rat(0)
    if hi < 0:
        return -simplest_in(-hi, -lo)
    floor = int(lo)
    if lo == floor:
        return lo
    if floor + 1 <= hi:
        return rat(floor + 1)
    return floor + 1 / simplest_in(1 / (hi - floor), 1 / (lo - floor))


@dataclass(frozen=True, slots=True)
class ThresholdResult:
    """A bisected feasibility cut in s, with the simplest rational inside."""

    scenario_id: str
    lower: Q
    upper: Q
    candidate: Q


def critical_boundary(n: int, tol: Q = rat(1, 10**9)) -> ThresholdResult:
    """Rediscover the critical scenario's regularity floor by bisection.

    The scenario's power is tied to s (energy-type), so this walks s
    alone: the cut is bracketed with the scenario infeasible below and
    feasible above, narrowed to ``tol``, and reported together with the
    simplest rational in the final bracket.  No closed forms are
    consulted; agreement with :func:`s0` is a cross-check the
    verification suites perform.
    """
    tol = rat(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if n == 3:
        scenario_id = "critical-n3-energy"
        lo, hi = rat(1, 4), rat(3, 4)
    elif n >= 4:
        scenario_id = "critical-high-dim"
        lo, hi = rat(1, 8), rat(3, 4)
    else:
        raise ValueError("threshold bisection needs dimension 3 or higher")

    def feasible_at(s: Q) -> bool:
        alpha = 4 / (n - 2 * s)
        return feasibility(scenario_id, ProblemParams(n, s, alpha)).feasible

    if feasible_at(lo) or not feasible_at(hi):
        raise ValueError("bracket does not straddle the feasibility cut")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if feasible_at(mid):
            hi = mid
        else:
            lo = mid
    return ThresholdResult(scenario_id, lo, hi, simplest_in(lo, hi))


def exact_threshold(n: int, tol: Q = rat(1, 10**9), max_den: int = 1000) -> Q:
    """The regularity floor as an exact rational, when one is certifiable.

    A bracket of width ``tol`` admits at most one rational with
    denominator at most ``max_den`` once ``tol < 1/max_den^2``; if that
    rational exists and sits on the infeasible side of the cut it is
    returned.  Otherwise the floor is (to this precision) not a simple
    rational and :class:`UndecidableAtPrecision` carries the enclosure.
    """
    tol = rat(tol)
    if tol * max_den * max_den >= 1:
        raise ValueError("tolerance too coarse to isolate a candidate")
    res = critical_boundary(n, tol)
    candidate = res.candidate
    enclosure = (res.lower, res.upper)
    if candidate.denominator > max_den:
        raise UndecidableAtPrecision(
            f"no rational with denominator <= {max_den} in the enclosure", enclosure
        )
    alpha = 4 / (n - 2 * candidate)
    if feasibility(res.scenario_id, ProblemParams(n, candidate, alpha)).feasible:
        raise UndecidableAtPrecision(
            "candidate lies on the feasible side of the cut", enclosure
        )
    return candidate


# --------------------------------------------------------------------------
# inequality-chain audits
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ChainSample:
    """Both comparisons of one stated chain, evaluated at one s.

    ``first`` is the comparison between the window-existence bound and
    the stated lower bound, ``second`` the one between the stated lower
    bound and the window's upper end.  A failed comparison is masked
    when the surrounding min/max terms make the failing term
    non-binding in the theorem window.
    """

    s: Q
    terms: tuple[Q, Q | None, Q | None]
    first_holds: bool
    first_masked: bool
    second_holds: bool
    second_masked: bool

    @property
    def passes(self) -> bool:
        return (self.first_holds or self.first_masked) and (
            self.second_holds or self.second_masked
        )


def _lt(a: Q | None, b: Q | None) -> bool:
    if b is None:
        return a is not None
    if a is None:
        return False
    return a < b


def _le(a: Q | None, b: Q | None) -> bool:
    return not _lt(b, a)


def _lipschitz_chain_sample(n: int, s: Q) -> ChainSample:
    d = n - 2 * s
    a = (2 + 4 * s * (n - 1) / (3 * n - 4)) / d
    b = (2 + 8 * s * (1 - rat(1, n))) / d
    c = (4 * s + 4 - rat(n, n - 1)) / d
    other_upper = _min_terms(4 / d, (n + 2 * s) / d)
    return ChainSample(
        s=s,
        terms=(a, b, c),
        first_holds=a < b,
        first_masked=rat(1) >= a,
        second_holds=b < c,
        second_masked=_le(other_upper, c),
    )


def _holder_chain_sample(n: int, s: Q) -> ChainSample:
    d = n - 2 * s
    a = 2 * (2 * n * s + 3 * n - 2 * s - 4) / ((3 * n - 4) * d)
    b = posdiv(2 + 4 * s * (1 - rat(1, n)), d - 4 * s * (1 - rat(1, n)))
    c = posdiv(2 * s + 4 - rat(n, n - 1), n - 4 * s)
    other_upper = _min_terms(rat(1), 4 / d)
    return ChainSample(
        s=s,
        terms=(a, b, c),
        first_holds=_lt(a, b),
        first_masked=2 * s / d >= a,
        second_holds=_lt(b, c),
        second_masked=_le(other_upper, c),
    )


def verify_chain(n: int, s_samples: Iterable[Q]) -> dict[str, list[ChainSample]]:
    """Audit the stated inequality chains at the given regularities.

    Returns a report keyed by chain: the Lipschitz-power chain applies
    for n in {3, 4, 5} and the Hoelder-power chain for n >= 3; samples
    outside (0, 1) are skipped.  Every entry records exact term values,
    which comparisons hold, and whether failures are masked.
    """
    if n < 3:
        raise ValueError("chains are stated for dimension 3 and higher")
    samples = [rat(s) for s in s_samples]
    samples = [s for s in samples if 0 < s < 1]
    report: dict[str, list[ChainSample]] = {}
    if n in (3, 4, 5):
        report["lipschitz_chain"] = [_lipschitz_chain_sample(n, s) for s in samples]
    report["holder_chain"] = [_holder_chain_sample(n, s) for s in samples]
    return report
