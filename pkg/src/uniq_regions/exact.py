"""Exact rational arithmetic, extended rationals and canonical interval sets.

Every quantity the engine manipulates (Sobolev indices, Lebesgue exponents,
nonlinearity powers, window endpoints) is a rational number, and every
comparison must be decided exactly.  This module fixes the number type ``Q``
used everywhere else: ``gmpy2.mpq`` when available, ``fractions.Fraction``
otherwise.  Both keep values in lowest terms with a positive denominator, so
canonical-form invariants hold by construction and results are identical
either way; gmpy2 is only a speed upgrade.

On top of ``Q`` the module builds

* ``POS_INF`` / ``NEG_INF``, the two points of the extended rational line,
  ordered against every rational;
* ``Bound``, an endpoint with a closed/open flag (infinite endpoints are
  always open);
* ``Interval`` and ``IntervalSet``, where an interval set is kept canonical:
  sorted, pairwise disjoint, non-adjacent and with every member nonempty.
  Intersection takes the stricter closedness at shared endpoints, so
  ``[0, 1] & (1, 2]`` is empty while ``[0, 1] & [1, 2]`` is the point 1.

Rationals parse from ``"p/q"`` strings, plain integers and finite decimal
literals; they format back as ``p/q`` with the denominator omitted when 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Union

try:  # pragma: no cover - exercised implicitly by whichever backend is present
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

__all__ = [
    "Q",
    "rat",
    "format_rational",
    "POS_INF",
    "NEG_INF",
    "ExtRational",
    "ext_cmp",
    "Bound",
    "Interval",
    "IntervalSet",
]

RationalLike = Union[int, str, "Q"]


def rat(value: RationalLike, den: int | None = None) -> Q:
    """Build an exact rational from a string, an integer or a pair.

    Accepted string forms are ``"p/q"``, plain integers and finite decimal
    literals.  Floats are rejected on purpose: a float has already lost the
    exactness this engine is built around.

    Examples
    --------
    >>> rat("3/6") == rat(1, 2)
    True
    >>> rat("-0.325") == rat(-13, 40)
    True
    >>> rat(7) == 7
    True
    """
    if den is not None:
        return Q(value, den)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or an int")
    try:
        return Q(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {value!r}") from exc


def format_rational(q: Q) -> str:
    """Render ``q`` as ``p/q`` text, dropping the denominator when it is 1.

    >>> format_rational(rat(-1, 2))
    '-1/2'
    >>> format_rational(rat(4, 2))
    '2'
    """
    num = int(q.numerator)
    den = int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


# --------------------------------------------------------------------------
# extended rational line
# --------------------------------------------------------------------------


@functools.total_ordering
class _Infinity:
    """One signed point at infinity, comparable with every rational."""

    __slots__ = ("sign",)

    def __init__(self, sign: int) -> None:
        assert sign in (-1, 1)
        self.sign = sign

    def __lt__(self, other: object) -> bool:
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        if isinstance(other, (int, type(Q(0)))):
            return self.sign < 0
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self) -> int:
        return hash(("uniq_regions:inf", self.sign))

    def __neg__(self) -> "_Infinity":
        return NEG_INF if self.sign > 0 else POS_INF

    def __repr__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = _Infinity(1)
NEG_INF = _Infinity(-1)

ExtRational = Union["Q", _Infinity]


def ext_cmp(a: ExtRational, b: ExtRational) -> int:
    """Three-way comparison on the extended rational line."""
    if a == b:
        return 0
    return -1 if a < b else 1


def _is_finite(v: ExtRational) -> bool:
    return not isinstance(v, _Infinity)


def format_ext(v: ExtRational) -> str:
    return repr(v) if isinstance(v, _Infinity) else format_rational(v)


# --------------------------------------------------------------------------
# bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Bound:
    """An interval endpoint: an extended rational plus a closedness flag.

    Infinite endpoints are forced open; there is no such thing as a closed
    bound at infinity.
    """

    value: ExtRational
    closed: bool

    def __post_init__(self) -> None:
        if isinstance(self.value, _Infinity) and self.closed:
            raise ValueError("infinite bounds are always open")

    @classmethod
    def closed_at(cls, v: RationalLike) -> "Bound":
        return cls(rat(v), True)

    @classmethod
    def open_at(cls, v: RationalLike) -> "Bound":
        return cls(rat(v), False)

    @classmethod
    def neg_inf(cls) -> "Bound":
        return cls(NEG_INF, False)

    @classmethod
    def pos_inf(cls) -> "Bound":
        return cls(POS_INF, False)

    def as_pair(self) -> list[str]:
        """Serialize as a ``[value, closedness]`` pair of strings."""
        return [format_ext(self.value), "closed" if self.closed else "open"]


def _lower_admits(b: Bound, x: Q) -> bool:
    """Does the lower bound ``b`` admit the point ``x``?"""
    c = ext_cmp(x, b.value)
    return c > 0 or (c == 0 and b.closed)


def _upper_admits(b: Bound, x: Q) -> bool:
    c = ext_cmp(x, b.value)
    return c < 0 or (c == 0 and b.closed)


def lower_max(a: Bound, b: Bound) -> Bound:
    """The stricter of two lower bounds; open beats closed at equal values."""
    c = ext_cmp(a.value, b.value)
    if c != 0:
        return a if c > 0 else b
    return a if not a.closed else b


def upper_min(a: Bound, b: Bound) -> Bound:
    """The stricter of two upper bounds; open beats closed at equal values."""
    c = ext_cmp(a.value, b.value)
    if c != 0:
        return a if c < 0 else b
    return a if not a.closed else b


# --------------------------------------------------------------------------
# intervals
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Interval:
    """A convex chunk of the rational line, possibly a single point."""

    lo: Bound
    hi: Bound

    def is_empty(self) -> bool:
        c = ext_cmp(self.lo.value, self.hi.value)
        if c > 0:
            return True
        if c == 0:
            return not (self.lo.closed and self.hi.closed)
        return False

    def is_singleton(self) -> bool:
        return (
            ext_cmp(self.lo.value, self.hi.value) == 0
            and self.lo.closed
            and self.hi.closed
        )

    def contains(self, x: Q) -> bool:
        return _lower_admits(self.lo, x) and _upper_admits(self.hi, x)

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(lower_max(self.lo, other.lo), upper_min(self.hi, other.hi))

    def sample(self) -> Q:
        """Some rational inside a nonempty interval (midpoint rule).

        Finite two-sided intervals take the midpoint, half-bounded ones step
        one unit inward and the whole line answers 0.
        """
        assert not self.is_empty()
        lo_fin = _is_finite(self.lo.value)
        hi_fin = _is_finite(self.hi.value)
        if lo_fin and hi_fin:
            if ext_cmp(self.lo.value, self.hi.value) == 0:
                return self.lo.value
            return (self.lo.value + self.hi.value) / 2
        if lo_fin:
            return self.lo.value + 1
        if hi_fin:
            return self.hi.value - 1
        return Q(0)

    def as_pairs(self) -> list[list[str]]:
        return [self.lo.as_pair(), self.hi.as_pair()]

    def __repr__(self) -> str:
        lb = "[" if self.lo.closed else "("
        rb = "]" if self.hi.closed else ")"
        return f"{lb}{format_ext(self.lo.value)}, {format_ext(self.hi.value)}{rb}"


def _touch_or_overlap(a: Interval, b: Interval) -> bool:
    """True when ``a`` and ``b`` (with a.lo <= b.lo) leave no gap between them."""
    c = ext_cmp(a.hi.value, b.lo.value)
    if c > 0:
        return True
    if c < 0:
        return False
    return a.hi.closed or b.lo.closed


def _lower_sort_key_cmp(a: Interval, b: Interval) -> int:
    c = ext_cmp(a.lo.value, b.lo.value)
    if c != 0:
        return c
    if a.lo.closed != b.lo.closed:
        return -1 if a.lo.closed else 1
    return 0


@dataclass(frozen=True, slots=True)
class IntervalSet:
    """A canonical finite union of intervals.

    Canonical means: members sorted by lower bound, pairwise disjoint,
    non-adjacent (touching members are merged) and each nonempty.  Build one
    through :meth:`from_intervals`; the raw constructor trusts its input.
    """

    intervals: tuple[Interval, ...]

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def whole(cls) -> "IntervalSet":
        return cls((Interval(Bound.neg_inf(), Bound.pos_inf()),))

    @classmethod
    def singleton(cls, v: RationalLike) -> "IntervalSet":
        b = Bound.closed_at(v)
        return cls((Interval(b, b),))

    @classmethod
    def bounded(
        cls,
        lo: RationalLike,
        hi: RationalLike,
        lo_closed: bool = True,
        hi_closed: bool = True,
    ) -> "IntervalSet":
        iv = Interval(Bound(rat(lo), lo_closed), Bound(rat(hi), hi_closed))
        return cls.from_intervals([iv])

    @classmethod
    def from_intervals(cls, items: Iterable[Interval]) -> "IntervalSet":
        """Canonicalize: drop empties, sort, merge overlapping or touching."""
        kept = [iv for iv in items if not iv.is_empty()]
        kept.sort(key=functools.cmp_to_key(_lower_sort_key_cmp))
        merged: list[Interval] = []
        for iv in kept:
            if merged and _touch_or_overlap(merged[-1], iv):
                last = merged[-1]
                # The later interval can still end earlier; keep the looser hi.
                merged[-1] = Interval(last.lo, _upper_hull(last.hi, iv.hi))
            else:
                merged.append(iv)
        return cls(tuple(merged))

    # -- queries ----------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, x: RationalLike) -> bool:
        q = rat(x)
        return any(iv.contains(q) for iv in self.intervals)

    def single(self) -> Interval:
        """The unique member of a one-interval set (projections are convex)."""
        if len(self.intervals) != 1:
            raise ValueError(f"expected exactly one interval, have {self!r}")
        return self.intervals[0]

    # -- algebra ----------------------------------------------------------

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = [
            a.intersect(b)
            for a in self.intervals
            for b in other.intervals
        ]
        return IntervalSet.from_intervals(out)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_intervals(self.intervals + other.intervals)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersect(other)

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return self.union(other)

    def as_pairs(self) -> list[list[list[str]]]:
        return [iv.as_pairs() for iv in self.intervals]

    def __repr__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(repr(iv) for iv in self.intervals)


def _upper_hull(a: Bound, b: Bound) -> Bound:
    """The looser of two upper bounds (hull direction); closed beats open."""
    c = ext_cmp(a.value, b.value)
    if c != 0:
        return a if c > 0 else b
    return a if a.closed else b
