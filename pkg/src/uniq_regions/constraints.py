"""Affine constraint systems over a fixed exponent vocabulary, with exact
Fourier-Motzkin elimination.

A constraint is ``expr REL 0`` with ``REL`` one of ``<``, ``<=`` or ``=`` and
``expr`` affine over a closed list of variable names: the Sobolev shift
``sigma``, the reciprocals of the space-time Lebesgue exponents
(``gamma_inv``, ``rho_inv``, ``q_inv``, ``r_inv``, ``a_inv``, ``b_inv``,
``lambda_inv``, ``p1_inv``, ``p2_inv``, ``p3_inv``, ``l_inv``) and the slack
``eps``.  Working with reciprocals keeps every exponent relation affine, and
the fixed vocabulary means systems from different builders compose without a
renaming step.

The engine is deliberately plain:

* equalities are removed first by solving each for its earliest-declared
  variable and substituting (``substitute_equalities``);
* remaining variables are eliminated one at a time, in declaration order, by
  pairing lower against upper bounds (``fm_eliminate``); a derived constraint
  is strict when either parent is strict, and its provenance is the union of
  the parents' original labels;
* ground constraints (no variables) are never discarded, so an infeasible
  system ends with at least one false ground row whose provenance names a
  jointly inconsistent subset of the input (minimality is not claimed);
* a feasible system yields an exact rational witness by walking the
  eliminations backwards, taking midpoints of the surviving bound windows.

Everything is exact and deterministic; no tolerances appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact import (
    Bound,
    Interval,
    IntervalSet,
    Q,
    format_rational,
    lower_max,
    rat,
    upper_min,
)

__all__ = [
    "VOCABULARY",
    "LinExpr",
    "term",
    "const",
    "Constraint",
    "con",
    "ConstraintSystem",
    "SubstitutionResult",
    "Verdict",
    "Violation",
    "substitute_equalities",
    "fm_eliminate",
    "is_feasible",
    "project_interval",
    "check_assignment",
]

#: Closed vocabulary of variable names; systems may declare any subset.
VOCABULARY = (
    "sigma",
    "gamma_inv",
    "rho_inv",
    "q_inv",
    "r_inv",
    "a_inv",
    "b_inv",
    "lambda_inv",
    "p1_inv",
    "p2_inv",
    "p3_inv",
    "l_inv",
    "eps",
)

_ZERO = Q(0)
_RELS = ("<", "<=", "=")


# --------------------------------------------------------------------------
# affine expressions
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class LinExpr:
    """An affine expression ``sum(c_v * v) + const`` with rational data.

    Zero coefficients are dropped at construction, so two expressions are
    equal exactly when they are the same affine function.
    """

    coeffs: tuple[tuple[str, Q], ...]
    const: Q

    @classmethod
    def build(cls, terms: Mapping[str, Q] | None = None, constant=0) -> "LinExpr":
        items = []
        for name, c in (terms or {}).items():
            if name not in VOCABULARY:
                raise ValueError(f"unknown variable {name!r}")
            cq = rat(c)
            if cq != 0:
                items.append((name, cq))
        items.sort()
        return cls(tuple(items), rat(constant))

    def as_dict(self) -> dict[str, Q]:
        return dict(self.coeffs)

    def coeff(self, name: str) -> Q:
        for v, c in self.coeffs:
            if v == name:
                return c
        return _ZERO

    def vars(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def is_ground(self) -> bool:
        return not self.coeffs

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LinExpr":
        if isinstance(other, LinExpr):
            acc = dict(self.coeffs)
            for v, c in other.coeffs:
                nc = acc.get(v, _ZERO) + c
                if nc == 0:
                    acc.pop(v, None)
                else:
                    acc[v] = nc
            return LinExpr(tuple(sorted(acc.items())), self.const + other.const)
        return LinExpr(self.coeffs, self.const + rat(other))

    def __radd__(self, other) -> "LinExpr":
        return self.__add__(other)

    def __neg__(self) -> "LinExpr":
        return LinExpr(tuple((v, -c) for v, c in self.coeffs), -self.const)

    def __sub__(self, other) -> "LinExpr":
        if isinstance(other, LinExpr):
            return self + (-other)
        return LinExpr(self.coeffs, self.const - rat(other))

    def __rsub__(self, other) -> "LinExpr":
        return (-self) + rat(other)

    def __mul__(self, factor) -> "LinExpr":
        f = rat(factor)
        if f == 0:
            return LinExpr((), _ZERO)
        return LinExpr(
            tuple((v, c * f) for v, c in self.coeffs), self.const * f
        )

    def __rmul__(self, factor) -> "LinExpr":
        return self.__mul__(factor)

    def __truediv__(self, divisor) -> "LinExpr":
        d = rat(divisor)
        if d == 0:
            raise ZeroDivisionError("division of an affine expression by zero")
        return self.__mul__(1 / d)

    # -- substitution and evaluation -------------------------------------

    def subst(self, name: str, replacement: "LinExpr") -> "LinExpr":
        c = self.coeff(name)
        if c == 0:
            return self
        acc = dict(self.coeffs)
        del acc[name]
        base = LinExpr(tuple(sorted(acc.items())), self.const)
        return base + replacement * c

    def value(self, assignment: Mapping[str, Q]) -> Q:
        total = self.const
        for v, c in self.coeffs:
            total += c * assignment[v]
        return total

    def __repr__(self) -> str:
        parts: list[str] = []
        for v, c in self.coeffs:
            if c == 1:
                parts.append(f"+ {v}")
            elif c == -1:
                parts.append(f"- {v}")
            elif c < 0:
                parts.append(f"- {format_rational(-c)}*{v}")
            else:
                parts.append(f"+ {format_rational(c)}*{v}")
        if self.const != 0 or not parts:
            parts.append(
                f"- {format_rational(-self.const)}"
                if self.const < 0
                else f"+ {format_rational(self.const)}"
            )
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def term(name: str, coeff=1) -> LinExpr:
    """The expression ``coeff * name``."""
    return LinExpr.build({name: rat(coeff)})


def const(value) -> LinExpr:
    """A constant expression."""
    return LinExpr.build({}, rat(value))


# --------------------------------------------------------------------------
# constraints and systems
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Constraint:
    """``expr REL 0`` plus a human-readable label and provenance set.

    ``parents`` holds the labels of the original constraints this row was
    derived from; for an input row it is the singleton of its own label.
    """

    expr: LinExpr
    rel: str
    label: str
    parents: frozenset[str]

    def __post_init__(self) -> None:
        if self.rel not in _RELS:
            raise ValueError(f"relation must be one of {_RELS}, got {self.rel!r}")
        if not self.label:
            raise ValueError("constraints must carry a nonempty label")

    def is_ground(self) -> bool:
        return self.expr.is_ground()

    def ground_holds(self) -> bool:
        """Truth value of a ground constraint."""
        assert self.is_ground()
        c = self.expr.const
        if self.rel == "<":
            return c < 0
        if self.rel == "<=":
            return c <= 0
        return c == 0

    def __repr__(self) -> str:
        return f"{self.expr!r} {self.rel} 0  [{self.label}]"


def con(expr: LinExpr, rel: str, label: str) -> Constraint:
    """Make an input constraint; provenance starts at its own label."""
    return Constraint(expr, rel, label, frozenset((label,)))


@dataclass(frozen=True, slots=True)
class ConstraintSystem:
    """A declared variable tuple plus constraints over those variables.

    Declaration order is meaningful twice over: equalities are solved for
    their earliest-declared variable, and elimination proceeds through the
    declared tuple front to back.
    """

    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        seen = set()
        for v in self.variables:
            if v not in VOCABULARY:
                raise ValueError(f"unknown variable {v!r}")
            if v in seen:
                raise ValueError(f"variable {v!r} declared twice")
            seen.add(v)
        for c in self.constraints:
            extra = set(c.expr.vars()) - seen
            if extra:
                raise ValueError(
                    f"constraint {c.label!r} uses undeclared variables {sorted(extra)}"
                )

    @classmethod
    def make(
        cls, variables: Sequence[str], constraints: Iterable[Constraint]
    ) -> "ConstraintSystem":
        return cls(tuple(variables), tuple(constraints))

    def with_constraints(self, constraints: Iterable[Constraint]) -> "ConstraintSystem":
        return ConstraintSystem(self.variables, tuple(constraints))

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "constraints": [
                {
                    "expr": {
                        "const": format_rational(c.expr.const),
                        "terms": {
                            v: format_rational(q) for v, q in c.expr.coeffs
                        },
                    },
                    "rel": c.rel,
                    "label": c.label,
                }
                for c in self.constraints
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ConstraintSystem":
        rows = []
        for item in data["constraints"]:
            expr = LinExpr.build(
                {v: rat(t) for v, t in item["expr"]["terms"].items()},
                rat(item["expr"]["const"]),
            )
            rows.append(con(expr, item["rel"], item["label"]))
        return cls(tuple(data["variables"]), tuple(rows))

    def __repr__(self) -> str:
        rows = "\n  ".join(repr(c) for c in self.constraints)
        return f"ConstraintSystem({', '.join(self.variables)})\n  {rows}"


# --------------------------------------------------------------------------
# equality substitution
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SubstitutionResult:
    """Outcome of clearing equalities from a system.

    ``solved`` lists ``(variable, expression)`` pairs in the order they were
    eliminated; each expression only mentions variables still free at that
    point, so a witness is recovered by evaluating the list backwards.
    ``conflicts`` holds equalities that reduced to a false ground row.
    """

    system: ConstraintSystem
    solved: tuple[tuple[str, LinExpr], ...]
    conflicts: tuple[Constraint, ...]


def substitute_equalities(
    system: ConstraintSystem, protect: frozenset[str] = frozenset()
) -> SubstitutionResult:
    """Remove equality rows by solving and substituting.

    Each equality is solved for its earliest-declared variable outside
    ``protect``; equalities touching only protected variables stay in place
    (the projection routine needs them as two-sided bounds).  A ``0 = 0``
    row is dropped silently and a ``c = 0`` row with nonzero ``c`` is
    reported as a conflict.
    """
    order = {v: i for i, v in enumerate(system.variables)}
    rows = list(system.constraints)
    solved: list[tuple[str, LinExpr]] = []
    conflicts: list[Constraint] = []

    while True:
        target_idx = None
        target_var = None
        for i, c in enumerate(rows):
            if c.rel != "=":
                continue
            candidates = [v for v in c.expr.vars() if v not in protect]
            if candidates:
                target_idx = i
                target_var = min(candidates, key=order.__getitem__)
                break
        if target_idx is None:
            break
        eq = rows.pop(target_idx)
        coeff = eq.expr.coeff(target_var)
        # c*v + rest = 0  =>  v = -rest/c
        rest = eq.expr - term(target_var, coeff)
        replacement = rest * (-1 / coeff)
        solved.append((target_var, replacement))
        rows = [
            Constraint(
                c.expr.subst(target_var, replacement),
                c.rel,
                c.label,
                c.parents | eq.parents if target_var in c.expr.vars() else c.parents,
            )
            for c in rows
        ]

    kept: list[Constraint] = []
    for c in rows:
        if c.rel == "=" and c.is_ground():
            if c.ground_holds():
                continue  # 0 = 0, contentless
            conflicts.append(c)
            continue
        kept.append(c)

    remaining = tuple(v for v in system.variables if v not in {s for s, _ in solved})
    return SubstitutionResult(
        ConstraintSystem(remaining, tuple(kept)), tuple(solved), tuple(conflicts)
    )


# --------------------------------------------------------------------------
# elimination
# --------------------------------------------------------------------------


def _normalize_key(c: Constraint, order: Mapping[str, int]):
    """Scale-invariant identity of a constraint, for deduplication."""
    if not c.expr.coeffs:
        return ("ground", c.expr.const, c.rel)
    lead = min(c.expr.vars(), key=order.__getitem__)
    scale = 1 / abs(c.expr.coeff(lead))
    scaled = c.expr * scale
    return ("affine", scaled.coeffs, scaled.const)


def _dedup(rows: list[Constraint], order: Mapping[str, int]) -> list[Constraint]:
    """Collapse duplicates; for identical affine parts keep the strict row.

    Ground rows are only collapsed when fully identical (expression and
    relation both), so derived false rows such as ``0 < 0`` survive next to
    ``0 <= 0``.
    """
    out: list[Constraint] = []
    index: dict = {}
    for c in rows:
        key = _normalize_key(c, order)
        if key[0] == "ground":
            if key not in index:
                index[key] = len(out)
                out.append(c)
            continue
        if key not in index:
            index[key] = len(out)
            out.append(c)
            continue
        held = out[index[key]]
        if held.rel == "<=" and c.rel == "<":
            out[index[key]] = c  # strictly stronger, same feasible set
    return out


def fm_eliminate(system: ConstraintSystem, var: str) -> ConstraintSystem:
    """Eliminate ``var`` by pairing its lower bounds against its upper bounds.

    Rows not mentioning ``var`` pass through unchanged, including ground
    rows (true or false).  Every derived row is strict when either parent is
    strict and carries the union of the parents' provenance labels.
    """
    if var not in system.variables:
        raise ValueError(f"variable {var!r} not declared in this system")
    order = {v: i for i, v in enumerate(system.variables)}
    lowers: list[tuple[LinExpr, bool, Constraint]] = []  # var >= expr
    uppers: list[tuple[LinExpr, bool, Constraint]] = []  # var <= expr
    passthrough: list[Constraint] = []
    for c in system.constraints:
        if c.rel == "=":
            raise ValueError(
                f"fm_eliminate expects an inequality system; found equality {c.label!r}"
            )
        coeff = c.expr.coeff(var)
        if coeff == 0:
            passthrough.append(c)
            continue
        bound_expr = (c.expr - term(var, coeff)) * (-1 / coeff)
        strict = c.rel == "<"
        if coeff > 0:
            uppers.append((bound_expr, strict, c))
        else:
            lowers.append((bound_expr, strict, c))

    derived: list[Constraint] = []
    for lo_expr, lo_strict, lo_c in lowers:
        for hi_expr, hi_strict, hi_c in uppers:
            strict = lo_strict or hi_strict
            parents = lo_c.parents | hi_c.parents
            derived.append(
                Constraint(
                    lo_expr - hi_expr,
                    "<" if strict else "<=",
                    " & ".join(sorted(parents)),
                    parents,
                )
            )

    rows = _dedup(passthrough + derived, order)
    remaining = tuple(v for v in system.variables if v != var)
    return ConstraintSystem(remaining, tuple(rows))


# --------------------------------------------------------------------------
# feasibility, projection, point checks
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Verdict:
    """Feasibility answer: a witness or a violation certificate.

    ``certificate`` is a sorted tuple of original labels whose constraints
    are jointly unsatisfiable (the provenance of the false ground rows the
    elimination produced).
    """

    feasible: bool
    witness: dict[str, Q] | None = None
    certificate: tuple[str, ...] | None = None


@dataclass(frozen=True, slots=True)
class Violation:
    """One constraint an assignment fails, with its evaluated residual."""

    label: str
    rel: str
    residual: Q


def _false_grounds(system: ConstraintSystem) -> list[Constraint]:
    return [c for c in system.constraints if c.is_ground() and not c.ground_holds()]


def _certificate(rows: Iterable[Constraint]) -> tuple[str, ...]:
    labels: set[str] = set()
    for c in rows:
        labels |= c.parents
    return tuple(sorted(labels))


def is_feasible(system: ConstraintSystem) -> Verdict:
    """Decide the system exactly; produce a witness or a certificate.

    The witness follows the midpoint rule while unwinding the elimination:
    a doubly-bounded variable takes the midpoint of its residual window, a
    half-bounded one steps one unit inward and an unconstrained one takes 0.
    """
    sub = substitute_equalities(system)
    if sub.conflicts:
        return Verdict(False, certificate=_certificate(sub.conflicts))

    current = sub.system
    trail: list[tuple[str, list, list]] = []
    bad = _false_grounds(current)
    if bad:
        return Verdict(False, certificate=_certificate(bad))
    for var in sub.system.variables:
        lowers = []
        uppers = []
        for c in current.constraints:
            coeff = c.expr.coeff(var)
            if coeff == 0:
                continue
            bound_expr = (c.expr - term(var, coeff)) * (-1 / coeff)
            if coeff > 0:
                uppers.append((bound_expr, c.rel == "<"))
            else:
                lowers.append((bound_expr, c.rel == "<"))
        trail.append((var, lowers, uppers))
        current = fm_eliminate(current, var)
        bad = _false_grounds(current)
        if bad:
            return Verdict(False, certificate=_certificate(bad))

    assignment: dict[str, Q] = {}
    for var, lowers, uppers in reversed(trail):
        window = Interval(Bound.neg_inf(), Bound.pos_inf())
        for expr, strict in lowers:
            window = Interval(
                lower_max(window.lo, Bound(expr.value(assignment), not strict)),
                window.hi,
            )
        for expr, strict in uppers:
            window = Interval(
                window.lo,
                upper_min(window.hi, Bound(expr.value(assignment), not strict)),
            )
        assert not window.is_empty(), "complete elimination left an empty window"
        assignment[var] = window.sample()
    for var, expr in reversed(sub.solved):
        assignment[var] = expr.value(assignment)

    assert not check_assignment(system, assignment), "witness failed self-check"
    return Verdict(True, witness=assignment)


def project_interval(system: ConstraintSystem, var: str) -> IntervalSet:
    """Exact one-dimensional shadow of the feasible set on ``var``.

    The result is empty or a single interval (linear systems are convex).
    Equalities pinning ``var`` itself act as two-sided closed bounds.
    """
    if var not in system.variables:
        raise ValueError(f"variable {var!r} not declared in this system")
    sub = substitute_equalities(system, protect=frozenset((var,)))
    if sub.conflicts:
        return IntervalSet.empty()

    current = sub.system
    pins: list[Constraint] = []
    rows: list[Constraint] = []
    for c in current.constraints:
        if c.rel == "=":
            pins.append(c)  # touches only the protected variable
        else:
            rows.append(c)
    current = current.with_constraints(rows)
    for other in [v for v in current.variables if v != var]:
        current = fm_eliminate(current, other)
        if _false_grounds(current):
            return IntervalSet.empty()

    lo = Bound.neg_inf()
    hi = Bound.pos_inf()
    for c in tuple(current.constraints) + tuple(pins):
        coeff = c.expr.coeff(var)
        if coeff == 0:
            if not c.ground_holds():
                return IntervalSet.empty()
            continue
        value = -c.expr.const / coeff
        if c.rel == "=":
            lo = lower_max(lo, Bound(value, True))
            hi = upper_min(hi, Bound(value, True))
        elif coeff > 0:
            hi = upper_min(hi, Bound(value, c.rel == "<="))
        else:
            lo = lower_max(lo, Bound(value, c.rel == "<="))
    return IntervalSet.from_intervals([Interval(lo, hi)])


def check_assignment(
    system: ConstraintSystem, assignment: Mapping[str, Q]
) -> list[Violation]:
    """Evaluate every constraint at a total assignment.

    Returns the violated constraints with their residuals; an empty list
    means the assignment satisfies the system exactly.
    """
    missing = [
        v
        for c in system.constraints
        for v in c.expr.vars()
        if v not in assignment
    ]
    if missing:
        raise ValueError(f"assignment misses variables {sorted(set(missing))}")
    out: list[Violation] = []
    for c in system.constraints:
        r = c.expr.value(assignment)
        ok = r < 0 if c.rel == "<" else (r <= 0 if c.rel == "<=" else r == 0)
        if not ok:
            out.append(Violation(c.label, c.rel, r))
    return out
