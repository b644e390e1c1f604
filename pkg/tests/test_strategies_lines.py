"""Known-slope line classification: Methods One and Two."""

from fractions import Fraction

import pytest

from eggdrop.core import Region, SumLine, ThresholdPartition
from eggdrop.environment import Environment, audit_exhaustive
from eggdrop.errors import DomainError
from eggdrop.oracle import brute_force_line_partition
from eggdrop.strategies import classify_line_m1, classify_line_m2, recursive_bound


def run_m1(m, n, k, v):
    env = Environment(Region((m, n)), SumLine(Fraction(v)), k)
    return classify_line_m1(m, n, k, env), env


def run_m2(m, n, k, v):
    env = Environment(Region((m, n)), SumLine(Fraction(v)), k)
    return classify_line_m2(m, n, k, env), env


class TestMethodOne:
    def test_immediate_break(self):
        report, _ = run_m1(2, 2, 1, Fraction(1, 2))
        assert report.answer == ThresholdPartition(1)
        assert report.drops == 1

    def test_one_egg_walks_both_edges(self):
        report, _ = run_m1(4, 4, 1, Fraction(15, 2))  # V in (7, 8]
        assert report.drops == 8  # the full M + N walk
        assert report.answer == ThresholdPartition(8)

    def test_partitions_match_oracle(self):
        for v2 in range(1, 2 * 9 + 1):  # V in {1/2, 1, ..., 9}
            v = Fraction(v2, 2)
            report, _ = run_m1(5, 4, 2, v)
            assert report.answer.breaking_set(Region((5, 4))) == \
                brute_force_line_partition(5, 4, v)

    def test_audit_example(self):
        report = audit_exhaustive("line-m1", Region((20, 10)), 2)
        assert not report.correctness_failures
        assert report.max_drops <= 11
        assert not report.probe_sum_collisions

    def test_needs_an_egg(self):
        with pytest.raises(DomainError):
            run_m1(4, 4, 0, 3)

    def test_lattice_mode(self):
        report = audit_exhaustive("line-m1", Region((9, 5)), 2, mode="lattice")
        assert not report.correctness_failures


class TestMethodTwo:
    def test_worst_case_is_m_plus_one(self):
        report = audit_exhaustive("line-m2", Region((6, 4)), 2)
        assert report.max_drops == 7
        assert not report.correctness_failures

    def test_tiny_region(self):
        report = audit_exhaustive("line-m2", Region((1, 1)), 2)
        assert report.max_drops <= 2
        assert not report.correctness_failures

    def test_three_egg_bound_value(self):
        report, _ = run_m2(27, 9, 3, 20)
        assert report.bound_value == 12  # ceil(2*sqrt(27)) + 1

    def test_three_egg_audit(self):
        report = audit_exhaustive("line-m2", Region((27, 9)), 3)
        assert not report.correctness_failures
        assert report.max_drops <= 12

    def test_partitions_match_oracle(self):
        for v2 in range(1, 2 * 10 + 1):
            v = Fraction(v2, 2)
            report, _ = run_m2(6, 4, 2, v)
            assert report.answer.breaking_set(Region((6, 4))) == \
                brute_force_line_partition(6, 4, v)

    def test_needs_two_eggs(self):
        with pytest.raises(DomainError):
            run_m2(6, 4, 1, 3)

    def test_reserved_egg_suffices(self):
        # the diagonal phase uses k-1 eggs, rows use at most the reserved one
        for v2 in range(1, 21):
            _, env = run_m2(6, 4, 2, Fraction(v2, 2))
            assert env.eggs_broken <= 2


class TestLineBounds:
    def test_recursive_bound_dominates(self):
        for m, n, k in [(20, 10, 2), (12, 5, 3), (8, 8, 1)]:
            report = audit_exhaustive("line-m1", Region((m, n)), k)
            assert report.max_drops <= recursive_bound("line-m1", (m, n), k)
        for m, n, k in [(6, 4, 2), (27, 9, 3)]:
            report = audit_exhaustive("line-m2", Region((m, n)), k)
            assert report.max_drops <= recursive_bound("line-m2", (m, n), k)

    def test_method_two_collisions_are_benign_and_recorded(self):
        # M=2, N=1: the first diagonal probe has sum 3/2, colliding with the
        # enumerated half-integer level; the partition still verifies.
        report = audit_exhaustive("line-m2", Region((2, 1)), 2)
        assert not report.correctness_failures
        assert any(v == Fraction(3, 2) for v, _ in report.probe_sum_collisions)
