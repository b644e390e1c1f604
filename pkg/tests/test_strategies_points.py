"""Critical-point strategies: traces, bounds, budget safety."""

import pytest

from eggdrop.core import CriticalPoint, Outcome, Region, snapped_ceil
from eggdrop.environment import Environment, audit_exhaustive
from eggdrop.errors import DomainError
from eggdrop.strategies import (
    recursive_bound,
    schedule_triangular,
    solve_1d,
    solve_point,
    solve_point_2d,
    solve_point_3d,
    solve_point_dd,
    solve_triangular,
    triangular_worst_case,
)
from eggdrop.oracle import dp_min_drops


def run_point(dims, k, truth, mode=None):
    env = Environment(Region(dims), CriticalPoint(truth), k)
    report = solve_point(dims, k, env, mode)
    return report, env


class Test1D:
    def test_one_egg_probes_to_the_break(self):
        report, _ = run_point((36,), 1, (36,))
        assert report.answer.coords == (36,)
        assert report.drops == 36

    def test_jump_trace_example(self):
        report, _ = run_point((36,), 2, (25,))
        assert report.answer.coords == (25,)
        assert report.drops == 6
        probes = [p[0] for p, _ in report.trace.entries]
        assert probes == [6, 12, 18, 24, 30, 25]

    def test_four_egg_bound(self):
        report = audit_exhaustive("point", Region((100,)), 4)
        assert not report.correctness_failures
        assert report.max_drops <= 13

    def test_single_floor(self):
        report, env = run_point((1,), 3, (1,))
        assert report.answer.coords == (1,)
        assert report.drops == 1
        assert env.eggs_broken == 1


class TestTriangular:
    def test_table_schedule(self):
        assert schedule_triangular(36) == [8, 15, 21, 26, 30, 33, 35, 36]

    def test_single_floor(self):
        assert schedule_triangular(1) == [1]

    def test_ten_floors(self):
        assert schedule_triangular(10) == [4, 7, 9, 10]
        assert triangular_worst_case(10) == 4

    def test_matches_dp_optimum(self):
        report = audit_exhaustive("point", Region((36,)), 2,
                                  strategy="triangular")
        assert report.max_drops == 8 == dp_min_drops(36, 2)

    def test_runner_requires_two_eggs(self):
        env = Environment(Region((10,)), CriticalPoint((5,)), 1)
        with pytest.raises(DomainError):
            solve_triangular(10, env)


class Test2D:
    def test_smallest_region(self):
        report, _ = run_point((1, 1), 2, (1, 1))
        assert report.answer.coords == (1, 1)
        assert report.drops == 2
        assert [(p, o) for p, o in report.trace.entries] == [
            ((1, 0), Outcome.BROKE), ((0, 1), Outcome.BROKE)]

    def test_base_case_trace(self):
        report, _ = run_point((8, 5), 2, (3, 4))
        assert report.answer.coords == (3, 4)
        assert report.drops == 7
        points = [p for p, _ in report.trace.entries]
        assert points == [(1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3), (0, 4)]

    def test_audit_zero_failures(self):
        report = audit_exhaustive("point", Region((8, 5)), 3)
        assert not report.correctness_failures
        assert report.max_drops <= report.recursive_bound
        # compliance with the closed form is measured, not assumed
        assert isinstance(report.bound_compliant, bool)

    def test_escape_beyond_sub_rectangle(self):
        # a break caused by the y-axis alone must not cut off large x
        report, _ = run_point((8, 5), 3, (8, 1))
        assert report.answer.coords == (8, 1)


class Test3D:
    def test_smallest_region(self):
        report, _ = run_point((1, 1, 1), 3, (1, 1, 1))
        assert report.drops == 3

    def test_base_case_full_cost(self):
        report, _ = run_point((6, 4, 2), 3, (6, 4, 2))
        assert report.drops == 12  # L + M + N

    def test_audit_zero_failures(self):
        report = audit_exhaustive("point", Region((6, 4, 2)), 4)
        assert not report.correctness_failures
        assert report.max_drops <= report.recursive_bound


class TestGeneralD:
    def test_d1_matches_solve_1d(self):
        a = solve_point_dd((36,), 2, Environment(Region((36,)), CriticalPoint((25,)), 2))
        b = solve_1d(36, 2, Environment(Region((36,)), CriticalPoint((25,)), 2))
        assert a.trace == b.trace and a.answer == b.answer

    def test_d2_matches_solve_point_2d(self):
        a = solve_point_dd((8, 5), 3, Environment(Region((8, 5)), CriticalPoint((6, 2)), 3))
        b = solve_point_2d(8, 5, 3, Environment(Region((8, 5)), CriticalPoint((6, 2)), 3))
        assert a.trace == b.trace and a.answer == b.answer

    def test_d3_matches_solve_point_3d(self):
        a = solve_point_dd((6, 4, 2), 4, Environment(Region((6, 4, 2)), CriticalPoint((5, 2, 1)), 4))
        b = solve_point_3d(6, 4, 2, 4, Environment(Region((6, 4, 2)), CriticalPoint((5, 2, 1)), 4))
        assert a.trace == b.trace and a.answer == b.answer

    def test_four_dimensional_audit(self):
        report = audit_exhaustive("point", Region((2, 2, 2, 2)), 5)
        assert not report.correctness_failures
        assert report.max_drops <= report.recursive_bound

    def test_needs_enough_eggs(self):
        env = Environment(Region((2, 2, 2)), CriticalPoint((1, 1, 1)), 2)
        with pytest.raises(DomainError):
            solve_point((2, 2, 2), 2, env)


class TestLatticeMode:
    def test_all_coordinates_integral(self):
        report, _ = run_point((9, 6), 3, (7, 5), mode="lattice")
        assert report.answer.coords == (7, 5)
        for point, _ in report.trace.entries:
            assert all(isinstance(c, int) for c in point)

    def test_audit_small_region(self):
        report = audit_exhaustive("point", Region((9, 6)), 3, mode="lattice")
        assert not report.correctness_failures


class TestRecursiveBound:
    def test_one_egg_is_linear(self):
        assert recursive_bound("point", (36,), 1) == 36

    def test_two_eggs_36(self):
        assert recursive_bound("point", (36,), 2) == 11

    def test_three_eggs_100(self):
        # ceil(100/22) + (ceil(21/5) + 4) = 5 + 9; closed form also 14
        assert recursive_bound("point", (100,), 3) == 14
        assert snapped_ceil(3 * 100 ** (1 / 3)) == 14

    def test_dominates_measured_worst_case(self):
        for dims, k in [((50,), 3), ((12, 7), 2), ((12, 7), 4), ((4, 3, 2), 4)]:
            report = audit_exhaustive("point", Region(dims), k)
            assert report.max_drops <= recursive_bound("point", dims, k)


class TestBudgetSafety:
    @pytest.mark.parametrize("dims,k", [((20,), 2), ((20,), 5),
                                        ((6, 5), 2), ((6, 5), 4),
                                        ((3, 2, 2), 3), ((3, 2, 2), 5)])
    def test_breaks_never_exceed_budget(self, dims, k):
        import itertools
        for coords in itertools.product(*(range(1, n + 1) for n in dims)):
            env = Environment(Region(dims), CriticalPoint(coords), k)
            report = solve_point(dims, k, env)
            assert env.eggs_broken <= k
            assert report.trace.eggs_used == env.eggs_broken
