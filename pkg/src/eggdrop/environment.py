"""Hidden-truth oracle and exhaustive worst-case audits.

An Environment answers break/survive queries for one hidden truth while
enforcing the egg budget. audit_exhaustive replays a strategy against every
enumerable truth, verifies each answer against an independent ground truth,
and reports the measured worst case alongside the closed-form bound.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    CriticalPoint,
    GeneralLine,
    LinePartition,
    Outcome,
    PointAnswer,
    Rational,
    Region,
    SumLine,
    ThresholdPartition,
)
from .errors import (
    AmbiguousResultError,
    AuditSizeError,
    DomainError,
    EggDropError,
    OutOfEggsError,
    OutOfRegionError,
)

DEFAULT_TRUTH_CAP = 10**6
TRUTH_CAP_ENV_VAR = "EGGDROP_MAX_TRUTHS"


class Environment:
    """Oracle for one hidden truth with an egg budget.

    Outcomes are a pure function of (truth, point); the counters only record
    usage. Every query requires an intact egg.
    """

    def __init__(self, region: Region, truth, k: int):
        if k < 1:
            raise DomainError("need at least one egg")
        truth.validate(region)
        self.region = region
        self.truth = truth
        self.k = k
        self.drops_so_far = 0
        self.eggs_broken = 0

    def query(self, point: tuple) -> Outcome:
        if self.eggs_broken >= self.k:
            raise OutOfEggsError(
                f"all {self.k} eggs are broken after {self.drops_so_far} drops")
        point = tuple(point)
        if not all(isinstance(c, (int, Fraction)) for c in point):
            raise OutOfRegionError(f"coordinates must be exact rationals: {point}")
        if not self.region.contains(point):
            raise OutOfRegionError(
                f"point {point} outside region {self.region.dims}")
        broke = self.truth.breaks(point)
        self.drops_so_far += 1
        if broke:
            self.eggs_broken += 1
        return Outcome.BROKE if broke else Outcome.SURVIVED


# ---------------------------------------------------------------------------
# Truth enumeration
# ---------------------------------------------------------------------------

def enumerate_truths(kind: str, region: Region):
    """The finite adversary set audited for each problem kind."""
    if kind == "point":
        return [CriticalPoint(coords) for coords in
                itertools.product(*(range(1, n + 1) for n in region.dims))]
    if kind in ("line-m1", "line-m2"):
        # Lattice classification depends only on ceil(V), but probe outcomes
        # at rational points depend on real V; integers and half-odd levels
        # together exercise both sides of every lattice threshold.
        levels: list[Fraction] = []
        for t in range(1, region.total + 1):
            levels.append(Fraction(2 * t - 1, 2))
            levels.append(Fraction(t))
        return [SumLine(v) for v in levels]
    if kind == "line-slope":
        from .strategies import enumerate_general_lines
        return list(enumerate_general_lines(region))
    raise DomainError(f"unknown problem kind {kind!r}")


def truth_space_size(kind: str, region: Region) -> int:
    if kind == "point":
        size = 1
        for n in region.dims:
            size *= n
        return size
    if kind in ("line-m1", "line-m2"):
        return 2 * region.total
    if kind == "line-slope":
        return len(enumerate_truths(kind, region))
    raise DomainError(f"unknown problem kind {kind!r}")


# ---------------------------------------------------------------------------
# Audits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrectnessFailure:
    truth: object
    kind: str  # "wrong-answer" | "ambiguous" | "error"
    detail: str


@dataclass(frozen=True)
class AuditReport:
    problem_kind: str
    region: Region
    k: int
    strategy: str
    mode: Optional[str]
    truth_count: int
    max_drops: int
    worst_truth: object
    bound_value: Optional[int]
    exceedances: tuple[tuple[object, int], ...]
    correctness_failures: tuple[CorrectnessFailure, ...]
    recursive_bound: Optional[int] = None
    probe_sum_collisions: tuple[tuple[Fraction, object], ...] = ()

    @property
    def bound_compliant(self) -> bool:
        return self.bound_value is None or self.max_drops <= self.bound_value


class _GroundTruth:
    """Per-audit referee, caching brute-force partitions.

    Lattice sums are integers, so every sum-line level in (t-1, t] induces
    the identical partition; one oracle evaluation per threshold class
    suffices and the set comparison reduces to the minimal breaking sum.
    """

    def __init__(self, kind: str, region: Region):
        self.kind = kind
        self.region = region
        self._sum_cache: dict[int, tuple[frozenset, int]] = {}

    def _sum_class(self, truth: SumLine) -> tuple[frozenset, int]:
        from . import oracle
        key = -(-truth.v.numerator // truth.v.denominator)  # ceil
        if key not in self._sum_cache:
            m, n = self.region.dims
            breaking = oracle.brute_force_line_partition(m, n, truth)
            threshold = min((sum(p) for p in breaking),
                            default=self.region.total + 1)
            self._sum_cache[key] = (breaking, threshold)
        return self._sum_cache[key]

    def matches(self, truth, answer) -> bool:
        if self.kind == "point":
            return isinstance(answer, PointAnswer) and answer.coords == truth.coords
        if isinstance(truth, SumLine):
            if not isinstance(answer, ThresholdPartition):
                return False
            _, threshold = self._sum_class(truth)
            return answer.threshold == threshold
        from . import oracle
        m, n = self.region.dims
        expected = oracle.brute_force_line_partition(m, n, truth)
        return isinstance(answer, LinePartition) and answer.breaking == expected


def _run_truths(kind: str, region: Region, k: int, strategy: str,
                mode: Optional[str], truths):
    """Worker: run the strategy on each truth, returning per-truth summaries."""
    from .strategies import get_runner
    runner = get_runner(kind, region, k, strategy, mode)
    referee = _GroundTruth(kind, region)
    results = []
    for truth in truths:
        env = Environment(region, truth, k)
        probe_sums: tuple = ()
        try:
            report = runner(env)
        except AmbiguousResultError as exc:
            results.append({
                "truth": truth, "drops": env.drops_so_far,
                "failure": ("ambiguous",
                            f"{len(exc.candidates)} consistent lines remain"),
                "probe_sums": _trace_sums(exc.trace, kind),
            })
            continue
        except EggDropError as exc:
            results.append({
                "truth": truth, "drops": env.drops_so_far,
                "failure": ("error", f"{type(exc).__name__}: {exc}"),
                "probe_sums": (),
            })
            continue
        failure = None
        if not referee.matches(truth, report.answer):
            failure = ("wrong-answer",
                       f"answer {report.answer!r} disagrees with ground truth")
        if report.drops != env.drops_so_far:
            failure = ("error", "trace length disagrees with environment counter")
        probe_sums = _trace_sums(report.trace, kind)
        results.append({
            "truth": truth, "drops": env.drops_so_far,
            "failure": failure, "probe_sums": probe_sums,
        })
    return results


def _trace_sums(trace, kind: str) -> tuple:
    if kind not in ("line-m1", "line-m2") or trace is None:
        return ()
    return tuple(sum(point) for point, _ in trace.entries)


def _chunk_worker(args):
    return _run_truths(*args)


def audit_exhaustive(kind: str, region: Region, k: int,
                     strategy: str = "default", mode: Optional[str] = None,
                     parallelism: int = 1, force: bool = False,
                     max_truths: Optional[int] = None) -> AuditReport:
    """Run the strategy against every truth and verify each answer.

    Strategy errors become correctness-failure entries rather than aborting.
    Truth spaces beyond the cap (10^6, or EGGDROP_MAX_TRUTHS) refuse to run
    unless forced.
    """
    if kind.startswith("point"):
        kind = "point"
    cap = max_truths if max_truths is not None else int(
        os.environ.get(TRUTH_CAP_ENV_VAR, DEFAULT_TRUTH_CAP))
    size = truth_space_size(kind, region)
    if size > cap and not force:
        raise AuditSizeError(
            f"{size} truths exceed the cap of {cap}; pass force to override")

    truths = enumerate_truths(kind, region)
    if parallelism > 1 and len(truths) > 1:
        chunks = [truths[i::parallelism] for i in range(parallelism)]
        args = [(kind, region, k, strategy, mode, chunk)
                for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            per_chunk = list(pool.map(_chunk_worker, args))
        by_truth = {}
        for chunk_results in per_chunk:
            for row in chunk_results:
                by_truth[id_key(row["truth"])] = row
        results = [by_truth[id_key(t)] for t in truths]
    else:
        results = _run_truths(kind, region, k, strategy, mode, truths)

    bound = _bound_for(kind, region, k, strategy)
    rec_bound = _recursive_bound_for(kind, region, k, strategy, mode)
    max_drops, worst = 0, None
    failures = []
    exceedances = []
    probe_sums: set = set()
    for row in results:
        if row["drops"] > max_drops:
            max_drops, worst = row["drops"], row["truth"]
        if row["failure"] is not None:
            failures.append(CorrectnessFailure(row["truth"], *row["failure"]))
        if bound is not None and row["drops"] > bound:
            exceedances.append((row["truth"], row["drops"]))
        probe_sums.update(row["probe_sums"])

    collisions = ()
    if kind in ("line-m1", "line-m2"):
        collisions = tuple(
            (truth.v, truth) for truth in truths
            if truth.v.denominator != 1 and truth.v in probe_sums
        )

    return AuditReport(
        problem_kind=kind, region=region, k=k, strategy=strategy, mode=mode,
        truth_count=len(truths), max_drops=max_drops, worst_truth=worst,
        bound_value=bound, exceedances=tuple(exceedances),
        correctness_failures=tuple(failures), recursive_bound=rec_bound,
        probe_sum_collisions=collisions,
    )


def id_key(truth) -> tuple:
    if isinstance(truth, CriticalPoint):
        return ("p",) + truth.coords
    if isinstance(truth, SumLine):
        return ("s", truth.v)
    return ("g", truth.a, truth.b, truth.v)


def _bound_for(kind: str, region: Region, k: int, strategy: str) -> Optional[int]:
    from .optimizer import closed_form_bound
    from .strategies import triangular_worst_case
    if kind == "point" and strategy == "triangular":
        return triangular_worst_case(region.dims[0])
    if kind == "line-slope":
        return None
    return closed_form_bound(kind, region.dims, k)


def _recursive_bound_for(kind: str, region: Region, k: int, strategy: str,
                         mode: Optional[str]) -> Optional[int]:
    from .strategies import recursive_bound
    if kind == "line-slope":
        return None
    if kind == "point" and strategy == "triangular":
        return recursive_bound("triangular", region.dims, k)
    return recursive_bound(kind, region.dims, k, mode)
