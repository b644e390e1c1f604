"""Search strategies and their executed-recursion drop-count ceilings.

Every strategy consumes an environment (anything with a ``query(point)``
method) and produces a StrategyReport whose answer is forced by the final
knowledge state, never guessed. Jump phases re-derive their step from the
current sub-box via the closed-form optimizer; once a break has been observed
at a box corner, that corner is never re-probed.

Two evaluation modes: "lattice" keeps every drop coordinate an integer
(driving steps rounded up, companion coordinates rounded to nearest);
"abstract" keeps the driving positions at exact rational multiples of the
continuous step with exact rational companions. Defaults: lattice for 1D,
abstract elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import (
    GeneralLine,
    LineKnowledge,
    LinePartition,
    Outcome,
    PointAnswer,
    PointKnowledge,
    Rational,
    Region,
    StrategyReport,
    SumKnowledge,
    ThresholdPartition,
    Trace,
    ks_resolved,
    ks_update,
    rational_ceil,
    rational_floor,
)
from .errors import (
    AmbiguousResultError,
    DomainError,
    InsufficientEggsError,
    StrategyError,
)
from .optimizer import closed_form_bound, phase_step

QueryFn = Callable[[tuple], Outcome]


def default_mode(d: int) -> str:
    return "lattice" if d == 1 else "abstract"


def _round_nearest(value: Rational) -> int:
    """Round half up, exactly."""
    return rational_floor(Fraction(value) + Fraction(1, 2))


@dataclass(frozen=True)
class StepPlan:
    """First step chosen at each egg level, for report diagnostics."""

    mode: str
    per_level: tuple[tuple[int, Rational], ...]


class _Recorder:
    """Environment adapter that accumulates the trace."""

    def __init__(self, env):
        self.env = env
        self.entries: list[tuple[tuple, Outcome]] = []

    def __call__(self, point: tuple) -> Outcome:
        outcome = self.env.query(point)
        self.entries.append((tuple(point), outcome))
        return outcome

    def trace(self) -> Trace:
        return Trace(tuple(self.entries))


# ---------------------------------------------------------------------------
# Critical-point engine (any dimension)
# ---------------------------------------------------------------------------

class _PointEngine:
    """Diagonal jump recursion plus axis sweeps over a d-dimensional box."""

    def __init__(self, dims: tuple[int, ...], eggs: int, query: QueryFn, mode: str):
        self.region = Region(tuple(dims))
        d = self.region.d
        if eggs < d:
            raise DomainError(f"need at least {d} eggs for a {d}D point search")
        self.eggs = eggs
        self.query = query
        self.mode = mode
        self.state = PointKnowledge.initial(self.region)
        self.steps: dict[int, Rational] = {}

    def probe(self, point: tuple) -> Outcome:
        outcome = self.query(point)
        self.state = ks_update(self.state, point, outcome)
        return outcome

    def run(self) -> tuple[int, ...]:
        self._jump_phases()
        coords = tuple(self._axis_sweep(axis) for axis in range(self.region.d))
        resolved = ks_resolved(self.state)
        if resolved != PointAnswer(coords):
            raise StrategyError(
                f"swept coordinates {coords} are not forced by the trace")
        return coords

    # -- jump phases --------------------------------------------------------

    def _jump_phases(self) -> None:
        d = self.region.d
        lo = tuple(Fraction(0) for _ in range(d))
        hi = tuple(Fraction(n) for n in self.region.dims)
        # For d >= 2 the region's far corner is guaranteed to break (every
        # coordinate is at its axis maximum), so it is treated as an implicit
        # bracket and never probed; 1D keeps the literal clamped probe.
        bracket = d >= 2
        while self.eggs > d:
            driving = hi[0] - lo[0]
            # Bracketed 1D sub-intervals exclude the known-breaking corner, so
            # the step is sized for the remaining unknown floors.
            step_basis = driving - 1 if (d == 1 and bracket) else driving
            companion = sum(hi[i] - lo[i] for i in range(1, d))
            if step_basis <= 1:
                break
            try:
                step = phase_step(self.eggs, d, float(step_basis),
                                  float(companion) * float(step_basis) / float(driving),
                                  self.mode)
            except DomainError:
                break
            if bracket and step >= driving:
                break
            self.steps.setdefault(self.eggs, step)
            ratios = tuple((hi[i] - lo[i]) / driving for i in range(d))
            outcome, lo, hi, bracket = self._one_phase(lo, hi, ratios, step, bracket)
            if outcome is Outcome.BROKE:
                self.eggs -= 1

    def _one_phase(self, lo, hi, ratios, step, bracket):
        d = self.region.d
        prev = lo
        i = 0
        while True:
            i += 1
            x = lo[0] + i * step
            clamped = False
            if bracket:
                if x >= hi[0]:
                    # Every informative position survived; keep the eggs and
                    # shrink the box to the unprobed tail.
                    return Outcome.SURVIVED, prev, hi, True
            elif x >= hi[0]:
                x = hi[0]
                clamped = True
            point = self._diagonal_point(lo, x, ratios, hi)
            if self.probe(point) is Outcome.BROKE:
                return Outcome.BROKE, prev, point, True
            prev = point
            if clamped:
                # Region guarantee makes the clamped corner break; a survival
                # here would have raised a contradiction above.
                raise StrategyError("far-corner probe survived")

    def _diagonal_point(self, lo, x, ratios, hi):
        coords = [x]
        for j in range(1, len(lo)):
            value = lo[j] + (x - lo[0]) * ratios[j]
            if self.mode == "lattice":
                value = min(_round_nearest(value), int(hi[j]))
            coords.append(value)
        return tuple(_as_plain(c) for c in coords)

    # -- axis sweeps ---------------------------------------------------------

    def _axis_sweep(self, axis: int) -> int:
        d = self.region.d
        while True:
            cap, observed = self.state.axis_cap(axis)
            lower = self.state.lowers[axis]
            if lower >= cap:
                raise StrategyError(f"axis {axis} interval collapsed")
            if observed and lower + 1 == cap:
                return cap
            x = lower + 1
            point = tuple(x if j == axis else 0 for j in range(d))
            if self.probe(point) is Outcome.BROKE:
                return x


def _as_plain(value: Rational) -> Rational:
    """Collapse integral Fractions to ints for lean traces."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


# ---------------------------------------------------------------------------
# Critical-point strategies
# ---------------------------------------------------------------------------

def _point_kind(d: int) -> str:
    return {1: "point-1d", 2: "point-2d", 3: "point-3d"}.get(d, "point-dd")


def solve_point(dims, k: int, env, mode: Optional[str] = None) -> StrategyReport:
    """Locate the critical point with k eggs in any dimension."""
    region = Region(tuple(dims))
    mode = mode or default_mode(region.d)
    _check_env(env, region, k)
    recorder = _Recorder(env)
    engine = _PointEngine(region.dims, k, recorder, mode)
    coords = engine.run()
    return StrategyReport(
        kind=_point_kind(region.d),
        region=region,
        k=k,
        answer=PointAnswer(coords),
        trace=recorder.trace(),
        bound_value=closed_form_bound("point", region.dims, k),
        step_plan=StepPlan(mode, tuple(sorted(engine.steps.items(), reverse=True))),
    )


def solve_1d(n: int, k: int, env, mode: str = "lattice") -> StrategyReport:
    return solve_point((n,), k, env, mode)


def solve_point_2d(m: int, n: int, k: int, env,
                   mode: Optional[str] = None) -> StrategyReport:
    return solve_point((m, n), k, env, mode)


def solve_point_3d(l: int, m: int, n: int, k: int, env,
                   mode: Optional[str] = None) -> StrategyReport:
    return solve_point((l, m, n), k, env, mode)


def solve_point_dd(dims, k: int, env, mode: Optional[str] = None) -> StrategyReport:
    return solve_point(tuple(dims), k, env, mode)


# ---------------------------------------------------------------------------
# Triangular two-egg schedule
# ---------------------------------------------------------------------------

def schedule_triangular(n: int) -> list[int]:
    """First-egg floors with decreasing gaps; worst case t drops where
    t is minimal with t(t+1)/2 >= n."""
    if n < 1:
        raise DomainError("need at least one floor")
    t = 1
    while t * (t + 1) // 2 < n:
        t += 1
    floors = []
    position, gap = 0, t
    while position < n:
        position = min(n, position + gap)
        floors.append(position)
        gap = max(1, gap - 1)
    return floors


def triangular_worst_case(n: int) -> int:
    t = 1
    while t * (t + 1) // 2 < n:
        t += 1
    return t


def solve_triangular(n: int, env) -> StrategyReport:
    """Two-egg search following the triangular schedule."""
    region = Region((n,))
    _check_env(env, region, 2)
    recorder = _Recorder(env)
    engine = _PointEngine(region.dims, 2, recorder, "lattice")
    for floor in schedule_triangular(n):
        if engine.probe((floor,)) is Outcome.BROKE:
            break
    answer = engine._axis_sweep(0)
    if ks_resolved(engine.state) != PointAnswer((answer,)):
        raise StrategyError("triangular sweep did not force the answer")
    return StrategyReport(
        kind="point-1d",
        region=region,
        k=2,
        answer=PointAnswer((answer,)),
        trace=recorder.trace(),
        bound_value=triangular_worst_case(n),
        step_plan=StepPlan("lattice", ()),
    )


# ---------------------------------------------------------------------------
# Known-slope critical line (x + y = V)
# ---------------------------------------------------------------------------

def _sum_probe_point(region: Region, total: int) -> tuple[int, int]:
    """A lattice point on the bottom or right edge with the given sum."""
    m = region.dims[0]
    if total <= m:
        return (total, 0)
    return (m, total - m)


class _SumSession:
    def __init__(self, region: Region, recorder: _Recorder):
        self.region = region
        self.recorder = recorder
        self.state = SumKnowledge.initial(region)

    def probe(self, point) -> Outcome:
        outcome = self.recorder(point)
        self.state = ks_update(self.state, point, outcome)
        return outcome


def _sum_walk(session: _SumSession, bracket: bool) -> None:
    """One-egg edge walk over undecided integer sums, in increasing order.

    Without a bracketing break (top level), the walk continues until the egg
    breaks, which the region guarantees by the far corner; with a bracket the
    known-breaking level is never re-probed.
    """
    region = session.region
    while True:
        state = session.state
        targets = list(state.interior_integers())
        if not bracket:
            top = rational_ceil(state.hi)
            if top not in targets and state.lo < top <= state.hi:
                targets.append(top)
        if not targets:
            return
        point = _sum_probe_point(region, targets[0])
        if session.probe(point) is Outcome.BROKE:
            bracket = True
            if not session.state.interior_integers():
                return


def classify_line_m1(m: int, n: int, k: int, env,
                     mode: Optional[str] = None) -> StrategyReport:
    """Method One: diagonal jump recursion ending in a one-egg edge walk."""
    region = Region((m, n))
    if k < 1:
        raise DomainError("need at least one egg")
    mode = mode or "abstract"
    _check_env(env, region, k)
    recorder = _Recorder(env)
    session = _SumSession(region, recorder)
    eggs = k
    bracket = False
    steps: dict[int, Rational] = {}
    ray = Fraction(n, m)

    x_lo: Rational = Fraction(0)
    x_hi: Rational = Fraction(m)
    while eggs >= 2 and ks_resolved(session.state) is None:
        driving = x_hi - x_lo
        if driving <= 1:
            break
        try:
            step = phase_step(eggs, 1, float(driving),
                              float(driving * ray), mode)
        except DomainError:
            break
        if bracket and step >= driving:
            break
        steps.setdefault(eggs, step)
        phase_lo = x_lo
        prev = x_lo
        i = 0
        while True:
            i += 1
            x = phase_lo + i * step
            clamped = False
            if bracket:
                if x >= x_hi:
                    x_lo = prev
                    break
            elif x >= x_hi:
                x = x_hi
                clamped = True
            y = _round_nearest(x * ray) if mode == "lattice" else x * ray
            point = (_as_plain(x), _as_plain(min(y, Fraction(n))))
            if session.probe(point) is Outcome.BROKE:
                x_lo, x_hi = prev, Fraction(x)
                bracket = True
                eggs -= 1
                break
            prev = Fraction(x)
            if clamped:
                raise StrategyError("far-corner probe survived")

    if ks_resolved(session.state) is None:
        _sum_walk(session, bracket)

    answer = ks_resolved(session.state)
    if not isinstance(answer, ThresholdPartition):
        raise StrategyError("edge walk did not force a partition")
    return StrategyReport(
        kind="line-m1",
        region=region,
        k=k,
        answer=answer,
        trace=recorder.trace(),
        bound_value=closed_form_bound("line-m1", region.dims, k),
        step_plan=StepPlan(mode, tuple(sorted(steps.items(), reverse=True))),
    )


def classify_line_m2(m: int, n: int, k: int, env,
                     mode: Optional[str] = None) -> StrategyReport:
    """Method Two: 1D jump recursion along the diagonal with one reserved egg,
    then one probe per remaining undecided row."""
    region = Region((m, n))
    if k < 2:
        raise DomainError("Method Two needs at least two eggs")
    mode = mode or "abstract"
    _check_env(env, region, k)
    recorder = _Recorder(env)
    session = _SumSession(region, recorder)
    ray = Fraction(n, m)

    def diagonal_query(point_1d: tuple) -> Outcome:
        x = point_1d[0]
        y = _round_nearest(x * ray) if mode == "lattice" else _as_plain(x * ray)
        outcome = recorder((x, y))
        session.state = ks_update(session.state, (x, y), outcome)
        return outcome

    engine = _PointEngine((m,), k - 1, diagonal_query, "lattice")
    engine.run()

    rows = session.state.interior_integers()
    for row in rows:
        point = _sum_probe_point(region, row)
        if session.probe(point) is Outcome.BROKE:
            break

    answer = ks_resolved(session.state)
    if not isinstance(answer, ThresholdPartition):
        raise StrategyError("row tests did not force a partition")
    return StrategyReport(
        kind="line-m2",
        region=region,
        k=k,
        answer=answer,
        trace=recorder.trace(),
        bound_value=closed_form_bound("line-m2", region.dims, k),
        step_plan=StepPlan(mode, tuple(sorted(engine.steps.items(), reverse=True))),
    )


# ---------------------------------------------------------------------------
# Unknown-slope critical line
# ---------------------------------------------------------------------------

def enumerate_general_lines(region: Region) -> tuple[GeneralLine, ...]:
    """All valid unknown-slope truths: descending/horizontal/vertical lines
    with positive intercept through at least two lattice points of the
    region."""
    if region.d != 2:
        raise DomainError("general lines are 2D only")
    m, n = region.dims
    points = [(x, y) for x in range(m + 1) for y in range(n + 1)]
    seen: set[tuple[int, int, int]] = set()
    lines: list[GeneralLine] = []
    for idx, p1 in enumerate(points):
        for p2 in points[idx + 1:]:
            try:
                line = GeneralLine.through(p1, p2)
            except DomainError:
                continue
            key = (line.a, line.b, line.v)
            if key in seen:
                continue
            seen.add(key)
            lines.append(line)
    return tuple(sorted(lines, key=lambda l: (l.a, l.b, l.v)))


def classify_line_general(m: int, n: int, k: int, env) -> StrategyReport:
    """Two-egg unknown-slope classifier: edge walk, then a slope-ordered scan.

    Equal-slope candidates are probed individually from the lowest point
    upward; a shared-slope group is still settled by its first break. When
    the surviving candidate lines disagree on the partition, the run ends in
    AmbiguousResultError carrying the candidates (recorded, not hidden).
    """
    region = Region((m, n))
    if k == 1:
        raise InsufficientEggsError(
            "one egg cannot pin an unknown-slope line: two breaking points "
            "are needed to constrain the slope")
    if k != 2:
        raise DomainError("only the two-egg procedure is supported")
    _check_env(env, region, k)
    recorder = _Recorder(env)
    state = LineKnowledge.initial(region, enumerate_general_lines(region))

    def probe(point) -> Outcome:
        nonlocal state
        outcome = recorder(point)
        state = ks_update(state, point, outcome)
        return outcome

    walk = [(0, y) for y in range(1, n + 1)] + [(x, n) for x in range(1, m + 1)]
    first_break = None
    for point in walk:
        if probe(point) is Outcome.BROKE:
            first_break = point
            break
    if first_break is None:
        raise StrategyError("edge walk ended without a break")

    if ks_resolved(state) is None:
        if first_break[0] == 0:
            a = first_break[1]
            candidates = [(x, y) for x in range(1, m + 1) for y in range(a + 1)]
            reference = (0, a)
        else:
            b = first_break[0]
            candidates = [(x, y) for x in range(b + 1, m + 1)
                          for y in range(n + 1)]
            reference = (b, n)

        def slope(pt) -> Fraction:
            return Fraction(pt[1] - reference[1], pt[0] - reference[0])

        def span(pt) -> int:
            return (pt[0] - reference[0]) ** 2 + (pt[1] - reference[1]) ** 2

        ordered = sorted(candidates, key=lambda pt: (slope(pt), -span(pt)))
        for point in ordered:
            if ks_resolved(state) is not None:
                break
            if probe(point) is Outcome.BROKE:
                break

    answer = ks_resolved(state)
    if answer is None:
        raise AmbiguousResultError(
            "consistent lines disagree on the partition",
            candidates=sorted(state.candidates, key=lambda l: (l.a, l.b, l.v)),
            trace=recorder.trace(),
        )
    if not isinstance(answer, LinePartition):
        raise StrategyError("unexpected answer type for a line search")
    return StrategyReport(
        kind="line-slope",
        region=region,
        k=k,
        answer=answer,
        trace=recorder.trace(),
        bound_value=(m + n) + (m + 1) * (n + 1),
        step_plan=StepPlan("lattice", ()),
    )


# ---------------------------------------------------------------------------
# Executed-recursion ceilings
# ---------------------------------------------------------------------------

def _bound_1d(k: int, floors: int) -> int:
    """B(1,N)=N; B(k,N)=ceil(N/S)+B(k-1,S-1) with the lattice step."""
    if floors <= 1:
        return max(0, floors)
    if k == 1:
        return floors
    step = phase_step(k, 1, float(floors), 0.0, "lattice")
    return -(-floors // step) + _bound_1d(k - 1, step - 1)


def _bound_diagonal(dims: tuple[int, ...], k: int, mode: str,
                    offset: int, base_cost, initial_bracket: bool) -> int:
    """Worst-case drops of the executed diagonal recursion.

    Simulates the phase structure (break at the last informative probe vs.
    every probe surviving) and charges ``base_cost`` once jumps stop.
    ``offset`` is the egg floor (d for points, 1 for the known-slope line).
    """
    driving_total = Fraction(dims[0])
    ratio = Fraction(sum(dims[1:]), dims[0]) if len(dims) > 1 else Fraction(0)
    cache: dict[tuple[int, Fraction, bool], int] = {}

    def w(eggs: int, length: Fraction, bracket: bool) -> int:
        if eggs <= offset:
            return base_cost(eggs, length, bracket)
        key = (eggs, length, bracket)
        if key in cache:
            return cache[key]
        if length <= 1:
            result = base_cost(eggs, length, bracket)
        else:
            try:
                step = phase_step(eggs, offset, float(length),
                                  float(length * ratio), mode)
            except DomainError:
                cache[key] = base_cost(eggs, length, bracket)
                return cache[key]
            step = Fraction(step)
            if bracket and step >= length:
                result = base_cost(eggs, length, bracket)
            elif bracket:
                i_max = rational_ceil(length / step) - 1 \
                    if (length / step).denominator == 1 else rational_floor(length / step)
                if i_max < 1:
                    result = base_cost(eggs, length, bracket)
                else:
                    rest = length - i_max * step
                    result = i_max + max(w(eggs - 1, step, True),
                                         w(eggs, rest, True))
            else:
                i_max = rational_ceil(length / step)
                result = i_max + w(eggs - 1, min(step, length), True)
        cache[key] = result
        return result

    return w(k, driving_total, initial_bracket)


def recursive_bound(kind: str, dims, k: int, mode: Optional[str] = None) -> int:
    """Drop-count ceiling of the recursion actually executed.

    Unlike the closed forms, this follows the implemented branching: for
    d >= 2 the base charge is the full region extent per axis, because a
    disjunctive break can force an axis sweep beyond the paper's
    sub-rectangle.
    """
    dims = tuple(dims)
    d = len(dims)
    if kind == "point":
        if k < d:
            raise DomainError(f"need k >= d; got k={k}, d={d}")
        if d == 1:
            return _bound_1d(k, dims[0])
        mode = mode or default_mode(d)
        region_total = sum(dims)
        return _bound_diagonal(dims, k, mode, d,
                               lambda eggs, length, bracket: region_total,
                               initial_bracket=True)
    if kind == "line-m1":
        if k < 1:
            raise DomainError("need k >= 1")
        mode = mode or "abstract"
        ratio = Fraction(sum(dims[1:]), dims[0])

        def walk_cost(eggs: int, length: Fraction, bracket: bool) -> int:
            return min(sum(dims), rational_ceil(length * (1 + ratio)))

        return _bound_diagonal(dims, k, mode, 1, walk_cost,
                               initial_bracket=False)
    if kind == "line-m2":
        if k < 2:
            raise DomainError("need k >= 2")
        return _bound_1d(k - 1, dims[0]) + 2
    if kind == "triangular":
        return triangular_worst_case(dims[0])
    raise DomainError(f"no recursive bound for kind {kind!r}")


# ---------------------------------------------------------------------------
# Runner registry (used by audits and the CLI)
# ---------------------------------------------------------------------------

def get_runner(kind: str, region: Region, k: int, strategy: str = "default",
               mode: Optional[str] = None):
    """A callable env -> StrategyReport for the given problem kind."""
    if kind == "point":
        if strategy == "triangular":
            if region.d != 1 or k != 2:
                raise DomainError("the triangular schedule is 1D, two eggs only")
            return lambda env: solve_triangular(region.dims[0], env)
        if strategy not in ("default", "jump"):
            raise DomainError(f"unknown point strategy {strategy!r}")
        return lambda env: solve_point(region.dims, k, env, mode)
    if strategy not in ("default", "jump"):
        raise DomainError(f"unknown strategy {strategy!r} for kind {kind!r}")
    if kind == "line-m1":
        return lambda env: classify_line_m1(*region.dims, k, env, mode)
    if kind == "line-m2":
        return lambda env: classify_line_m2(*region.dims, k, env, mode)
    if kind == "line-slope":
        return lambda env: classify_line_general(*region.dims, k, env)
    raise DomainError(f"unknown problem kind {kind!r}")


def _check_env(env, region: Region, k: int) -> None:
    env_region = getattr(env, "region", None)
    if env_region is not None and env_region != region:
        raise DomainError(
            f"environment region {env_region.dims} != requested {region.dims}")
    env_k = getattr(env, "k", None)
    if env_k is not None and env_k < k:
        raise DomainError(f"environment budget {env_k} below requested {k}")
