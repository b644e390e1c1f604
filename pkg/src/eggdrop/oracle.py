"""Independent ground truths: exact 1D DP optimum, capacity counts, and
brute-force line partitions.

These are the referees for the strategy audits and deliberately share no code
with the strategies they check.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import GeneralLine, Region, SumLine, region_lattice
from .errors import DomainError

_DP_FLOOR_CAP = 100_000

# dp tables per egg count: _dp_tables[k][n] = minimal worst-case drops for n
# floors with k eggs, filled incrementally; _dp_pointers[k] is the last
# optimal first drop (non-decreasing in n).
_dp_tables: dict[int, list[int]] = {}
_dp_pointers: dict[int, int] = {}


def boardman_capacity(n: int, k: int) -> int:
    """Floors distinguishable with k eggs in n drops: sum_{j<=k} C(n, j).

    Exact arbitrary-precision integers, so the documented overflow error is
    unreachable in this implementation.
    """
    if n < 0 or k < 1:
        raise DomainError(f"need n >= 0 and k >= 1; got n={n}, k={k}")
    return sum(math.comb(n, j) for j in range(1, k + 1))


def dp_min_drops(floors: int, eggs: int) -> int:
    """Minimal worst-case drops for ``floors`` floors and ``eggs`` eggs.

    D(k, 0) = 0, D(1, N) = N, and
    D(k, N) = 1 + min over first drop f of max(D(k-1, f-1), D(k, N-f)).
    The optimal first drop is non-decreasing in N, which keeps the fill
    linear per egg count.
    """
    if floors < 0 or eggs < 1:
        raise DomainError(f"need floors >= 0 and eggs >= 1; got {floors}, {eggs}")
    if floors > _DP_FLOOR_CAP:
        raise DomainError(f"floor count {floors} exceeds the {_DP_FLOOR_CAP} cap")
    if floors == 0:
        return 0
    if eggs == 1 or floors == 1:
        return floors

    _dp_fill(eggs, floors)
    return _dp_tables[eggs][floors]


def _dp_fill(eggs: int, floors: int) -> None:
    table = _dp_tables.setdefault(eggs, [0, 1])
    if len(table) > floors:
        return
    if eggs - 1 >= 2:
        _dp_fill(eggs - 1, floors - 1)
        lower = _dp_tables[eggs - 1]
        below = lower.__getitem__
    else:
        below = lambda i: i  # one egg: linear search
    pointer = _dp_pointers.get(eggs, 1)
    while len(table) <= floors:
        n = len(table)
        pointer = min(pointer, n)

        def worst(f: int) -> int:
            return max(below(f - 1), table[n - f])

        # worst() is quasiconvex in f (max of a non-decreasing and a
        # non-increasing term), so advancing while not strictly worse lands
        # on a global minimum; the optimum never moves left as n grows.
        while pointer + 1 <= n and worst(pointer + 1) <= worst(pointer):
            pointer += 1
        table.append(1 + worst(pointer))
    _dp_pointers[eggs] = pointer


def min_drops_from_capacity(floors: int, eggs: int) -> int:
    """Smallest n with boardman_capacity(n, eggs) >= floors (the dual route)."""
    if floors < 0 or eggs < 1:
        raise DomainError(f"need floors >= 0 and eggs >= 1; got {floors}, {eggs}")
    n = 0
    while boardman_capacity(n, eggs) < floors:
        n += 1
    return n


def brute_force_line_partition(m: int, n: int, truth) -> frozenset:
    """Breaking lattice points of a line truth by direct evaluation.

    Lenient about the level: any positive V is evaluated, even one above
    M+N (everything is then safe).
    """
    if m < 1 or n < 1:
        raise DomainError("region sides must be >= 1")
    region = Region((m, n))
    if isinstance(truth, (int, Fraction)):
        truth = SumLine(Fraction(truth))
    if isinstance(truth, SumLine):
        if truth.v <= 0:
            raise DomainError("line level must be positive")
        num, den = truth.v.numerator, truth.v.denominator
        return frozenset(p for p in region_lattice(region)
                         if (p[0] + p[1]) * den >= num)
    if isinstance(truth, GeneralLine):
        a, b, v = truth.a, truth.b, truth.v
        return frozenset(p for p in region_lattice(region)
                         if a * p[0] + b * p[1] >= v)
    raise DomainError(f"not a line truth: {truth!r}")
