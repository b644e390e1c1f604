"""Worst-case egg-drop search: strategies, exact audits, and bound analysis."""

from .core import (
    CriticalPoint,
    GeneralLine,
    LinePartition,
    Outcome,
    PointAnswer,
    Region,
    StrategyReport,
    SumLine,
    ThresholdPartition,
    Trace,
    ks_resolved,
    ks_update,
)
from .environment import AuditReport, Environment, audit_exhaustive
from .optimizer import LemmaParams, MinimizerResult, integer_step, lemma_minimize
from .oracle import boardman_capacity, brute_force_line_partition, dp_min_drops
from .strategies import (
    classify_line_general,
    classify_line_m1,
    classify_line_m2,
    recursive_bound,
    schedule_triangular,
    solve_1d,
    solve_point,
    solve_point_2d,
    solve_point_3d,
    solve_point_dd,
    solve_triangular,
)

__version__ = "0.1.0"
