"""Rasterizing parameter space, comparing regions, tracing boundaries.

A grid scan evaluates scenarios (through the feasibility engine) or
closed-form predicates at every point of an exact rational lattice in
``(s, alpha)``, producing a tri-state map: true, false, or
not-applicable where a scenario's guard rejects the point.  Grids feed
three consumers: the figure renderer, the nesting audits (literature
regions contained in the new theorem regions, open cells disjoint from
them), and the scenario-versus-closed-form equivalence checks, where
any disagreement is reported together with its distance to the nearest
status boundary so that endpoint-strictness artifacts on region edges
can be told apart from interior defects.

Boundary tracing sharpens region edges past lattice resolution: along a
fixed-``s`` line in ``alpha`` (or along ``s`` for critical scenarios,
whose power is tied to ``s``), every sign change of the target is
bracketed by exact bisection to a requested width.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .exact import Q, format_rational, rat
from .predicates import PREDICATES, region_predicate
from .scenarios import SCENARIOS, ProblemParams, feasibility

TRUE = "T"
FALSE = "F"
NOT_APPLICABLE = "NA"

Target = str | tuple[str, ...]


@dataclass(frozen=True, slots=True)
class GridSpec:
    """An exact rational lattice over a rectangle in ``(s, alpha)``.

    The step must divide both range widths so every grid point is the
    range start plus an integer number of steps; no floating point is
    involved anywhere.
    """

    n: int
    s_range: tuple[Q, Q]
    alpha_range: tuple[Q, Q]
    step: Q

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise ValueError("dimension must be an integer >= 2")
        s_lo, s_hi = (rat(v) for v in self.s_range)
        a_lo, a_hi = (rat(v) for v in self.alpha_range)
        step = rat(self.step)
        if step <= 0:
            raise ValueError("step must be positive")
        if s_hi < s_lo or a_hi < a_lo:
            raise ValueError("ranges must be nonempty")
        for width in (s_hi - s_lo, a_hi - a_lo):
            if (width / step).denominator != 1:
                raise ValueError("step must divide both range widths")
        object.__setattr__(self, "s_range", (s_lo, s_hi))
        object.__setattr__(self, "alpha_range", (a_lo, a_hi))
        object.__setattr__(self, "step", step)

    def s_points(self) -> tuple[Q, ...]:
        lo, hi = self.s_range
        count = int((hi - lo) / self.step)
        return tuple(lo + k * self.step for k in range(count + 1))

    def alpha_points(self) -> tuple[Q, ...]:
        lo, hi = self.alpha_range
        count = int((hi - lo) / self.step)
        return tuple(lo + k * self.step for k in range(count + 1))


@dataclass(frozen=True, slots=True)
class RegionGrid:
    """Statuses of each target at each lattice point of a scan."""

    spec: GridSpec
    targets: tuple[str, ...]
    cells: dict[tuple[Q, Q], tuple[str, ...]]

    def status(self, point: tuple[Q, Q], target: str) -> str:
        return self.cells[point][self.targets.index(target)]

    def to_csv(self) -> str:
        lines = ["s,alpha," + ",".join(self.targets)]
        for s in self.spec.s_points():
            for a in self.spec.alpha_points():
                row = self.cells[(s, a)]
                lines.append(
                    f"{format_rational(s)},{format_rational(a)}," + ",".join(row)
                )
        return "\n".join(lines) + "\n"


def _evaluator(target: str):
    if target in SCENARIOS:
        scenario = SCENARIOS[target]

        def eval_scenario(p: ProblemParams) -> str:
            if not scenario.applies(p):
                return NOT_APPLICABLE
            return TRUE if feasibility(target, p).feasible else FALSE

        return eval_scenario
    if target in PREDICATES:

        def eval_predicate(p: ProblemParams) -> str:
            return TRUE if region_predicate(target, p) else FALSE

        return eval_predicate
    known = ", ".join(sorted(SCENARIOS) + sorted(PREDICATES))
    raise ValueError(f"unknown target {target!r} (known: {known})")


def scan(spec: GridSpec, targets: Sequence[str]) -> RegionGrid:
    """Evaluate every target at every lattice point.

    Scenario targets go through the feasibility engine and report
    not-applicable where their guard rejects the point; predicate
    targets are closed-form true/false.  Rows may be evaluated in
    parallel (``UNIQ_REGIONS_THREADS``); the merge is by lattice order,
    so the result is identical either way.
    """
    if not targets:
        raise ValueError("at least one target is required")
    target_ids = tuple(targets)
    evaluators = [_evaluator(t) for t in target_ids]
    alpha_pts = spec.alpha_points()

    def scan_row(s: Q) -> list[tuple[tuple[Q, Q], tuple[str, ...]]]:
        out = []
        for a in alpha_pts:
            p = ProblemParams(spec.n, s, a)
            out.append(((s, a), tuple(ev(p) for ev in evaluators)))
        return out

    s_pts = spec.s_points()
    workers = int(os.environ.get("UNIQ_REGIONS_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(scan_row, s_pts))
    else:
        rows = [scan_row(s) for s in s_pts]
    cells = {point: statuses for row in rows for point, statuses in row}
    return RegionGrid(spec=spec, targets=target_ids, cells=cells)


# --------------------------------------------------------------------------
# region comparison
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class MismatchRow:
    """One disagreeing lattice point.

    ``boundary_distance`` is the Chebyshev lattice distance (in
    parameter units) to the nearest grid point where either side's
    folded status differs from its status here; None when no such point
    exists on the grid.  A distance of one step means the mismatch sits
    directly on a region edge, which is where endpoint-strictness
    differences between formulations are expected to show up.
    """

    point: tuple[Q, Q]
    status_a: str
    status_b: str
    boundary_distance: Q | None


@dataclass(frozen=True, slots=True)
class MismatchReport:
    mode: str
    target_a: tuple[str, ...]
    target_b: tuple[str, ...]
    rows: tuple[MismatchRow, ...]

    @property
    def empty(self) -> bool:
        return not self.rows


def _as_union(target: Target) -> tuple[str, ...]:
    if isinstance(target, str):
        return (target,)
    return tuple(target)


def _fold(grid: RegionGrid, union: tuple[str, ...]) -> dict[tuple[Q, Q], bool]:
    for t in union:
        if t not in grid.targets:
            raise ValueError(f"target {t!r} is not present in the grid")
    idx = [grid.targets.index(t) for t in union]
    return {
        point: any(statuses[i] == TRUE for i in idx)
        for point, statuses in grid.cells.items()
    }


def compare(
    grid: RegionGrid, a: Target, b: Target, mode: str = "equal"
) -> MismatchReport:
    """List every lattice point where the two sides disagree.

    Either side may be a single target or a union of targets; statuses
    fold by or, with not-applicable counting as false so that claims
    are judged only where a scenario is defined.  Mode ``"equal"``
    reports any difference; mode ``"subset"`` reports points where
    ``a`` holds but ``b`` does not.
    """
    if mode not in ("equal", "subset"):
        raise ValueError("mode must be 'equal' or 'subset'")
    union_a, union_b = _as_union(a), _as_union(b)
    fold_a, fold_b = _fold(grid, union_a), _fold(grid, union_b)
    s_pts, alpha_pts = grid.spec.s_points(), grid.spec.alpha_points()
    index = {
        (i, j): (s, a_)
        for i, s in enumerate(s_pts)
        for j, a_ in enumerate(alpha_pts)
    }

    def distance(i: int, j: int) -> Q | None:
        here = (fold_a[index[(i, j)]], fold_b[index[(i, j)]])
        max_ring = max(len(s_pts), len(alpha_pts))
        for r in range(1, max_ring):
            found_cell = False
            for di in range(-r, r + 1):
                for dj in range(-r, r + 1):
                    if max(abs(di), abs(dj)) != r:
                        continue
                    key = (i + di, j + dj)
                    if key not in index:
                        continue
                    found_cell = True
                    there = (fold_a[index[key]], fold_b[index[key]])
                    if there != here:
                        return r * grid.spec.step
            if not found_cell:
                return None
        return None

    rows = []
    for i, s in enumerate(s_pts):
        for j, a_ in enumerate(alpha_pts):
            point = (s, a_)
            va, vb = fold_a[point], fold_b[point]
            bad = (va != vb) if mode == "equal" else (va and not vb)
            if bad:
                rows.append(
                    MismatchRow(
                        point=point,
                        status_a=TRUE if va else FALSE,
                        status_b=TRUE if vb else FALSE,
                        boundary_distance=distance(i, j),
                    )
                )
    return MismatchReport(
        mode=mode, target_a=union_a, target_b=union_b, rows=tuple(rows)
    )


# --------------------------------------------------------------------------
# boundary tracing
# --------------------------------------------------------------------------

_DEFAULT_ALPHA_MAX = {2: rat(6), 3: rat(4), 4: rat(5, 2), 5: rat(2)}

_CRITICAL_POWER = {
    "critical-n2-low": lambda n, s: (2 + 2 * s) / (2 - 2 * s),
    "critical-n2-high": lambda n, s: (2 + 2 * s) / (2 - 2 * s),
    "critical-n3-mass": lambda n, s: (3 + 2 * s) / (3 - 2 * s),
    "critical-n3-energy": lambda n, s: 4 / (3 - 2 * s),
    "critical-high-dim": lambda n, s: 4 / (n - 2 * s),
}


def default_alpha_max(n: int) -> Q:
    return _DEFAULT_ALPHA_MAX.get(n, rat(3, 2))


def _bisect_flip(f, lo: Q, hi: Q, tol: Q) -> tuple[Q, Q]:
    v_lo = f(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) == v_lo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def boundary_trace(
    n: int,
    target: Target,
    s: Q,
    tol: Q,
    *,
    axis: str = "alpha",
    alpha_range: tuple[Q, Q] | None = None,
    s_range: tuple[Q, Q] | None = None,
    coarse: int = 64,
) -> list[tuple[Q, Q]]:
    """Bracket every status flip of a target along a 1-D parameter line.

    With ``axis="alpha"`` the line is ``alpha`` over ``alpha_range`` at
    the given ``s``.  With ``axis="s"`` the target must be a critical
    scenario; the line is ``s`` over ``s_range`` with ``alpha`` tied to
    the scenario's power, and the ``s`` argument is ignored.  The line
    is sampled at ``coarse`` uniform intervals and each adjacent sign
    change is bisected down to width ``tol``; an everywhere-constant
    sampling returns the empty list.  Not-applicable counts as false.
    """
    tol = rat(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if coarse < 1:
        raise ValueError("coarse sampling needs at least one interval")
    union = _as_union(target)
    if axis == "alpha":
        evaluators = [_evaluator(t) for t in union]
        lo, hi = alpha_range if alpha_range is not None else (rat(0), default_alpha_max(n))
        s = rat(s)

        def f(x: Q) -> bool:
            p = ProblemParams(n, s, x)
            return any(ev(p) == TRUE for ev in evaluators)

    elif axis == "s":
        for t in union:
            if t not in _CRITICAL_POWER:
                raise ValueError(
                    f"axis='s' tracing needs a critical scenario, got {t!r}"
                )
        lo, hi = s_range if s_range is not None else (rat(1, 64), rat(63, 64))

        def f(x: Q) -> bool:
            for t in union:
                alpha = _CRITICAL_POWER[t](n, x)
                p = ProblemParams(n, x, alpha)
                if SCENARIOS[t].applies(p) and feasibility(t, p).feasible:
                    return True
            return False

    else:
        raise ValueError("axis must be 'alpha' or 's'")
    lo, hi = rat(lo), rat(hi)
    if hi <= lo:
        raise ValueError("search range must be nonempty")
    width = (hi - lo) / coarse
    samples = [lo + k * width for k in range(coarse + 1)]
    values = [f(x) for x in samples]
    brackets = []
    for left, right, v_left, v_right in zip(samples, samples[1:], values, values[1:]):
        if v_left != v_right:
            brackets.append(_bisect_flip(f, left, right, tol))
    return brackets
