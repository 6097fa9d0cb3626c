"""Independent feasibility oracle: exact rational simplex on a margin LP.

The elimination engine in :mod:`uniq_regions.constraints` is the component
under test, so this oracle shares no code with it.  A mixed strict/non-strict
affine system is feasible exactly when the linear program

    maximize t
    subject to  a_i . x       <= b_i   for every non-strict row,
                a_i . x + t   <= b_i   for every strict row,
                two opposing rows for every equality,
                0 <= t <= 1

has optimum t* > 0: an open feasible set admits a uniform positive margin
(capped at 1 so the program is never unbounded), and conversely a positive
margin point satisfies every strict row strictly.

The solver is a dense two-phase tableau simplex over exact rationals with
Bland's anti-cycling rule.  Free variables are split into positive parts.
Nothing here is tuned for speed; it exists to be obviously correct and
structurally unrelated to Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import ConstraintSystem
from .exact import Q

__all__ = ["lp_feasible", "LpAnswer"]

_ZERO = Q(0)
_ONE = Q(1)


@dataclass(frozen=True, slots=True)
class LpAnswer:
    feasible: bool
    margin: Q | None = None
    point: dict[str, Q] | None = None


def _simplex_max(A: list[list[Q]], b: list[Q], c: list[Q]):
    """Maximize ``c.z`` over ``A z <= b, z >= 0``; returns (value, z) or None.

    ``None`` means the closed polyhedron is empty.  The objective must be
    bounded above on the feasible set (callers arrange this).
    """
    m = len(A)
    n = len(c)
    # Tableau columns: n structural, m slacks, m artificials, then RHS.
    width = n + 2 * m + 1
    rows: list[list[Q]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    for i in range(m):
        row = [_ZERO] * width
        sign = _ONE if b[i] >= 0 else -_ONE
        for j in range(n):
            row[j] = sign * A[i][j]
        row[n + i] = sign  # slack
        row[-1] = sign * b[i]
        art = n + m + i
        art_cols.append(art)
        if b[i] >= 0:
            basis.append(n + i)
        else:
            row[art] = _ONE
            basis.append(art)
        rows.append(row)

    def pivot(r: int, col: int) -> None:
        piv = rows[r][col]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * p for v, p in zip(rows[i], rows[r])]
        basis[r] = col

    def optimize(obj: list[Q]) -> Q:
        """Run Bland-rule simplex for 'maximize obj.z' on the current basis."""
        while True:
            # Reduced costs: obj_j - obj_B . column_j
            dual = [obj[basis[i]] for i in range(m)]
            entering = -1
            for j in range(width - 1):
                if j in blocked:
                    continue
                red = obj[j]
                for i in range(m):
                    if rows[i][j] != 0 and dual[i] != 0:
                        red -= dual[i] * rows[i][j]
                if red > 0:
                    entering = j
                    break
            if entering < 0:
                value = _ZERO
                for i in range(m):
                    value += dual[i] * rows[i][-1]
                return value
            leaving = -1
            best = None
            for i in range(m):
                a = rows[i][entering]
                if a > 0:
                    ratio = rows[i][-1] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leaving]
                    ):
                        best = ratio
                        leaving = i
            if leaving < 0:
                raise ArithmeticError("margin objective cannot be unbounded")
            pivot(leaving, entering)

    blocked: set[int] = set()

    # Phase 1: minimize the artificial sum, i.e. maximize its negation.
    if any(basis[i] in art_cols for i in range(m)):
        phase1 = [_ZERO] * (width - 1)
        for a in art_cols:
            phase1[a] = -_ONE
        value = optimize(phase1)
        if value != 0:
            return None
        # Pivot lingering artificials out of the basis where possible.
        for i in range(m):
            if basis[i] in art_cols:
                for j in range(n + m):
                    if rows[i][j] != 0:
                        pivot(i, j)
                        break
    blocked = set(art_cols)

    value = optimize(c + [_ZERO] * (2 * m))
    z = [_ZERO] * n
    for i in range(m):
        if basis[i] < n:
            z[basis[i]] = rows[i][-1]
    return value, z


def lp_feasible(system: ConstraintSystem) -> LpAnswer:
    """Decide a mixed strict system by the max-margin program above."""
    names = list(system.variables)
    idx = {v: i for i, v in enumerate(names)}
    n = len(names)
    # Structural variables: u_i - w_i per free variable, then the margin t.
    width = 2 * n + 1
    t_col = 2 * n
    A: list[list[Q]] = []
    b: list[Q] = []

    def add(coeffs: dict[int, Q], margin: bool, rhs: Q) -> None:
        row = [_ZERO] * width
        for j, v in coeffs.items():
            row[2 * j] = v
            row[2 * j + 1] = -v
        if margin:
            row[t_col] = _ONE
        A.append(row)
        b.append(rhs)

    for cst in system.constraints:
        coeffs = {idx[v]: q for v, q in cst.expr.coeffs}
        rhs = -cst.expr.const
        if cst.rel == "=":
            add(coeffs, False, rhs)
            add({j: -q for j, q in coeffs.items()}, False, -rhs)
        elif cst.rel == "<=":
            add(coeffs, False, rhs)
        else:
            add(coeffs, True, rhs)
    add({}, True, _ONE)  # t <= 1

    objective = [_ZERO] * width
    objective[t_col] = _ONE
    result = _simplex_max(A, b, objective)
    if result is None:
        return LpAnswer(False)
    value, z = result
    if value <= 0:
        return LpAnswer(False)
    point = {v: z[2 * j] - z[2 * j + 1] for v, j in idx.items()}
    return LpAnswer(True, margin=value, point=point)
