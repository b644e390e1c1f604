"""Domain types and the knowledge-state calculus.

Geometric break predicates are threshold tests at possibly-rational points, so
every comparison here is exact: coordinates are ints or ``fractions.Fraction``,
never floats. Floats are confined to the optimizer and analysis modules.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import ContradictionError, DomainError

Rational = Union[int, Fraction]


def as_rational(value) -> Rational:
    """Coerce to an exact rational; ints pass through untouched."""
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"not an exact rational: {value!r}")


def rational_floor(value: Rational) -> int:
    return math.floor(value)


def rational_ceil(value: Rational) -> int:
    return math.ceil(value)


def snapped_ceil(value: float, eps: float = 1e-9) -> int:
    """Ceiling that forgives binary-pow noise around exact integers.

    8**(2/3) evaluates to 3.9999999999999996; a bare ceil would report 4 but
    4.000000000000001 would report 5. Values within ``eps`` relative of an
    integer are treated as that integer.
    """
    nearest = round(value)
    if abs(value - nearest) <= eps * max(1.0, abs(value)):
        return int(nearest)
    return math.ceil(value)


def float_to_fraction(value: float, max_denominator: int = 10**7,
                      rel_tol: float = 1e-12) -> Fraction:
    """Exact rational within ``rel_tol`` relative error of ``value``.

    Prefers a small-denominator convergent so near-rational optima (18/5
    arriving as 3.6000000000000001) snap to the clean rational; falls back to
    the exact binary expansion otherwise.
    """
    exact = Fraction(value)
    limited = exact.limit_denominator(max_denominator)
    if value == 0:
        return limited
    if abs(limited - exact) <= Fraction(rel_tol) * abs(exact):
        return limited
    return exact


class Outcome(enum.Enum):
    SURVIVED = "survived"
    BROKE = "broke"


@dataclass(frozen=True)
class Region:
    """Axis lengths of the search lattice, sorted non-increasing."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if not self.dims:
            raise DomainError("region needs at least one axis")
        if any((not isinstance(n, int)) or n < 1 for n in self.dims):
            raise DomainError(f"axis lengths must be positive integers: {self.dims}")
        if any(a < b for a, b in zip(self.dims, self.dims[1:])):
            raise DomainError(f"axis lengths must be sorted non-increasing: {self.dims}")

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return sum(self.dims)

    def contains(self, point: tuple[Rational, ...]) -> bool:
        return len(point) == self.d and all(
            0 <= c <= n for c, n in zip(point, self.dims)
        )


# ---------------------------------------------------------------------------
# Hidden truths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPoint:
    """Integer threshold per axis: a drop breaks iff some coordinate reaches it."""

    coords: tuple[int, ...]

    def validate(self, region: Region) -> None:
        if len(self.coords) != region.d:
            raise DomainError("critical point dimension mismatch")
        if any((not isinstance(c, int)) or not (1 <= c <= n)
               for c, n in zip(self.coords, region.dims)):
            raise DomainError(f"critical coordinates must lie in [1, N_i]: {self.coords}")

    def breaks(self, point: tuple[Rational, ...]) -> bool:
        return any(a >= c for a, c in zip(point, self.coords))


@dataclass(frozen=True)
class SumLine:
    """Critical line x1+...+xd = v with known slope; breaks on or above."""

    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "v", Fraction(self.v))

    def validate(self, region: Region) -> None:
        if not (0 < self.v <= region.total):
            raise DomainError(f"line level must satisfy 0 < V <= {region.total}: {self.v}")

    def breaks(self, point: tuple[Rational, ...]) -> bool:
        total = sum(point)
        if type(total) is int:
            return total * self.v.denominator >= self.v.numerator
        return total >= self.v


@dataclass(frozen=True)
class GeneralLine:
    """Critical line a*x + b*y = v with unknown slope (2D only).

    Canonical form: integer coprime coefficients, a >= 0, b >= 0, v > 0.
    Slope is -a/b: negative (a,b > 0), zero (a = 0), or undefined/vertical
    (b = 0). The breaking side is a*x + b*y >= v.
    """

    a: int
    b: int
    v: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or (self.a == 0 and self.b == 0):
            raise DomainError("coefficients must be non-negative and not both zero")
        if self.v <= 0:
            raise DomainError("positive intercept required")
        g = math.gcd(math.gcd(self.a, self.b), self.v)
        if g != 1:
            object.__setattr__(self, "a", self.a // g)
            object.__setattr__(self, "b", self.b // g)
            object.__setattr__(self, "v", self.v // g)

    @classmethod
    def through(cls, p1: tuple[int, int], p2: tuple[int, int]) -> "GeneralLine":
        """Line through two distinct lattice points, canonicalized."""
        (x1, y1), (x2, y2) = p1, p2
        if p1 == p2:
            raise DomainError("need two distinct points")
        a = y1 - y2
        b = x2 - x1
        v = a * x1 + b * y1
        if v < 0 or (v == 0 and (a < 0 or b < 0)):
            a, b, v = -a, -b, -v
        return cls(a, b, v)

    def validate(self, region: Region) -> None:
        if region.d != 2:
            raise DomainError("general lines are 2D only")
        on_points = self.lattice_points_on(region)
        if len(on_points) < 2:
            raise DomainError("line must pass through two lattice points of the region")

    def lattice_points_on(self, region: Region) -> tuple[tuple[int, int], ...]:
        m, n = region.dims
        return tuple(
            (x, y)
            for x in range(m + 1)
            for y in range(n + 1)
            if self.a * x + self.b * y == self.v
        )

    def breaks(self, point: tuple[Rational, ...]) -> bool:
        x, y = point
        return self.a * x + self.b * y >= self.v


HiddenTruth = Union[CriticalPoint, SumLine, GeneralLine]


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trace:
    """Ordered drop log; replaying it against the same truth reproduces it."""

    entries: tuple[tuple[tuple[Rational, ...], Outcome], ...]

    @property
    def drops(self) -> int:
        return len(self.entries)

    @property
    def eggs_used(self) -> int:
        return sum(1 for _, outcome in self.entries if outcome is Outcome.BROKE)


# ---------------------------------------------------------------------------
# Answers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointAnswer:
    coords: tuple[int, ...]


@dataclass(frozen=True)
class ThresholdPartition:
    """Sum-line partition: lattice points with coordinate sum >= threshold break."""

    threshold: int

    def breaking_set(self, region: Region) -> frozenset[tuple[int, ...]]:
        return frozenset(p for p in region_lattice(region) if sum(p) >= self.threshold)


@dataclass(frozen=True)
class LinePartition:
    """Explicit safe/breaking split, plus the identified line when unique."""

    breaking: frozenset[tuple[int, int]]
    line: Optional[GeneralLine] = None


Answer = Union[PointAnswer, ThresholdPartition, LinePartition]


def region_lattice(region: Region):
    """All lattice points of the region, including the boundary."""
    import itertools
    return itertools.product(*(range(n + 1) for n in region.dims))


# ---------------------------------------------------------------------------
# Knowledge states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointKnowledge:
    """What a drop log proves about an integer critical point.

    ``lowers[i]`` is the largest integer known to be strictly below the
    critical coordinate (so c_i >= lowers[i]+1). Each break contributes a
    disjunction ``exists i: c_i <= thresholds[i]`` stored as floored integer
    thresholds; in one dimension that collapses to an upper bound, but in
    higher dimensions a break does NOT bound any single axis by itself.
    """

    region: Region
    lowers: tuple[int, ...]
    disjunctions: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def initial(cls, region: Region) -> "PointKnowledge":
        return cls(region, (0,) * region.d)

    def _disjunction_holds_at(self, point: tuple[int, ...],
                              thresholds: tuple[int, ...]) -> bool:
        return any(c <= t for c, t in zip(point, thresholds))

    def min_corner(self) -> tuple[int, ...]:
        return tuple(lo + 1 for lo in self.lowers)

    def is_consistent(self, candidate: tuple[int, ...]) -> bool:
        if any(not (lo < c <= n) for c, lo, n in
               zip(candidate, self.lowers, self.region.dims)):
            return False
        return all(self._disjunction_holds_at(candidate, d) for d in self.disjunctions)

    def is_empty(self) -> bool:
        corner = self.min_corner()
        if any(c > n for c, n in zip(corner, self.region.dims)):
            return True
        # Disjunctions are downward closed, so the minimal corner witnesses
        # non-emptiness whenever any point does.
        return not all(self._disjunction_holds_at(corner, d) for d in self.disjunctions)

    def candidate_count(self) -> int:
        """Exact size of the consistent set by enumeration (desk scale only)."""
        import itertools
        ranges = [range(lo + 1, n + 1) for lo, n in zip(self.lowers, self.region.dims)]
        return sum(1 for p in itertools.product(*ranges)
                   if all(self._disjunction_holds_at(p, d) for d in self.disjunctions))

    def axis_cap(self, axis: int) -> tuple[int, bool]:
        """Certain upper bound for one coordinate: (cap, from_observation).

        A disjunction caps ``axis`` once every other disjunct is known false
        (its threshold is <= the axis lower bound). Falls back to the region
        edge, which is an assumption rather than an observation.
        """
        cap = self.region.dims[axis]
        observed = False
        for thresholds in self.disjunctions:
            others_dead = all(
                thresholds[j] <= self.lowers[j]
                for j in range(len(thresholds)) if j != axis
            )
            if others_dead and thresholds[axis] < cap:
                cap = thresholds[axis]
                observed = True
            elif others_dead and thresholds[axis] == cap:
                observed = True
        return cap, observed


@dataclass(frozen=True)
class SumKnowledge:
    """Half-open interval (lo, hi] known to contain the line level V."""

    region: Region
    lo: Fraction
    hi: Fraction

    @classmethod
    def initial(cls, region: Region) -> "SumKnowledge":
        return cls(region, Fraction(0), Fraction(region.total))

    def interior_integers(self) -> range:
        """Integers strictly inside (lo, hi): the still-undecided thresholds.

        floor(lo)+1 > lo and ceil(hi)-1 < hi always, so the range needs no
        further filtering.
        """
        return range(rational_floor(self.lo) + 1, rational_ceil(self.hi))


@dataclass(frozen=True)
class LineKnowledge:
    """Explicit finite set of still-consistent general lines."""

    region: Region
    candidates: frozenset[GeneralLine]

    @classmethod
    def initial(cls, region: Region, universe) -> "LineKnowledge":
        return cls(region, frozenset(universe))

    def partitions(self) -> frozenset[frozenset[tuple[int, int]]]:
        lattice = tuple(region_lattice(self.region))
        return frozenset(
            frozenset(p for p in lattice if line.breaks(p))
            for line in self.candidates
        )


KnowledgeState = Union[PointKnowledge, SumKnowledge, LineKnowledge]


def ks_update(state: KnowledgeState, point: tuple[Rational, ...],
              outcome: Outcome) -> KnowledgeState:
    """Shrink the consistent set by one observation.

    Survival at ``a`` proves every critical coordinate exceeds a_i (points
    strictly below the threshold in every axis survive); a break proves the
    disjunction that some coordinate is <= a_i. Sum lines translate the same
    rule onto the level V.
    """
    if not state.region.contains(point):
        raise DomainError(f"point {point} outside region {state.region.dims}")

    if isinstance(state, PointKnowledge):
        if outcome is Outcome.SURVIVED:
            lowers = tuple(
                max(lo, rational_floor(a)) for lo, a in zip(state.lowers, point)
            )
            new = PointKnowledge(state.region, lowers, state.disjunctions)
        else:
            thresholds = tuple(rational_floor(a) for a in point)
            new = PointKnowledge(state.region, state.lowers,
                                 state.disjunctions + (thresholds,))
        if new.is_empty():
            raise ContradictionError(
                f"no critical point is consistent after {outcome.value} at {point}")
        return new

    if isinstance(state, SumKnowledge):
        s = sum(point)
        if outcome is Outcome.SURVIVED:
            new = SumKnowledge(state.region, max(state.lo, Fraction(s)), state.hi)
        else:
            new = SumKnowledge(state.region, state.lo, min(state.hi, Fraction(s)))
        if new.lo >= new.hi:
            raise ContradictionError(
                f"empty level interval after {outcome.value} at {point}")
        return new

    if isinstance(state, LineKnowledge):
        broke = outcome is Outcome.BROKE
        kept = frozenset(c for c in state.candidates if c.breaks(point) == broke)
        if not kept:
            raise ContradictionError(
                f"no candidate line is consistent after {outcome.value} at {point}")
        return LineKnowledge(state.region, kept)

    raise DomainError(f"unknown knowledge state {state!r}")


def ks_resolved(state: KnowledgeState) -> Optional[Answer]:
    """The unique forced answer, or None while candidates remain.

    Sum lines resolve as soon as no integer lies strictly inside the level
    interval: every lattice sum is then on a forced side, and the breaking
    threshold is ceil(hi). General lines resolve when every consistent line
    induces the same partition (coefficients may still be ambiguous).
    """
    if isinstance(state, PointKnowledge):
        corner = state.min_corner()
        if not state.is_consistent(corner):
            return None
        for axis in range(state.region.d):
            neighbour = list(corner)
            neighbour[axis] += 1
            if neighbour[axis] <= state.region.dims[axis] and \
                    state.is_consistent(tuple(neighbour)):
                return None
        return PointAnswer(corner)

    if isinstance(state, SumKnowledge):
        if state.interior_integers():
            return None
        return ThresholdPartition(rational_ceil(state.hi))

    if isinstance(state, LineKnowledge):
        partitions = state.partitions()
        if len(partitions) != 1:
            return None
        line = next(iter(state.candidates)) if len(state.candidates) == 1 else None
        return LinePartition(next(iter(partitions)), line)

    raise DomainError(f"unknown knowledge state {state!r}")


# ---------------------------------------------------------------------------
# Strategy reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrategyReport:
    """Outcome of one strategy run against one environment."""

    kind: str
    region: Region
    k: int
    answer: Answer
    trace: Trace
    bound_value: int
    step_plan: "object" = field(default=None, compare=False)

    @property
    def drops(self) -> int:
        return self.trace.drops

    @property
    def bound_met(self) -> bool:
        return self.drops <= self.bound_value
