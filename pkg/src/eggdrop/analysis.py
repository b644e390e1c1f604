"""Method One vs Method Two bound comparison and its Taylor approximations.

l(k) = k*(M+N)^(1/k) - ((k-1)*M^(1/(k-1)) + 1) is the bound difference:
negative means Method One needs fewer drops. T_n truncates the two
exponential series exp(ln(M+N)/k) and exp(ln(M)/(k-1)) after n correction
terms. Double precision throughout; no classification decisions hinge on
these values.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError

TIE_TOLERANCE = 1e-12
K_RANGE_CAP = 200

CSV_HEADER = ("k", "l_exact", "T1", "T2", "T3", "T4", "sign")

METHOD_ONE_BETTER = "MethodOneBetter"
METHOD_TWO_BETTER = "MethodTwoBetter"
TIE = "Tie"


@dataclass(frozen=True)
class ComparisonRow:
    k: int
    l_exact: float
    t1: float
    t2: float
    t3: float
    t4: float
    sign: str


def _check_params(k: int, m: int, n: int) -> None:
    if k < 2:
        raise DomainError(f"comparison needs k >= 2; got {k}")
    if not (m >= n >= 1):
        raise DomainError(f"need M >= N >= 1; got M={m}, N={n}")


def l_exact(k: int, m: int, n: int) -> float:
    """Exact bound difference between the two methods."""
    _check_params(k, m, n)
    return k * (m + n) ** (1.0 / k) - ((k - 1) * m ** (1.0 / (k - 1)) + 1.0)


def taylor_T(order: int, k: int, m: int, n: int) -> float:
    """Taylor polynomial of l(k): both series truncated after ``order``
    correction terms and combined.

    Order 2 reduces to ln(1 + N/M) + ln(M+N)^2/(2k) - ln(M)^2/(2(k-1)).
    """
    if order not in (1, 2, 3, 4):
        raise DomainError(f"supported orders are 1..4; got {order}")
    _check_params(k, m, n)
    log_total = math.log(m + n)
    log_m = math.log(m)
    first = sum(log_total ** j / (k ** j * math.factorial(j))
                for j in range(order + 1))
    second = sum(log_m ** j / ((k - 1) ** j * math.factorial(j))
                 for j in range(order + 1))
    return k * first - (k - 1) * second - 1.0


def taylor_T2_closed_form(k: int, m: int, n: int) -> float:
    """The printed two-correction-term form, for cross-checking taylor_T."""
    _check_params(k, m, n)
    return (math.log1p(n / m)
            + math.log(m + n) ** 2 / (2.0 * k)
            - math.log(m) ** 2 / (2.0 * (k - 1)))


def sign_of(value: float) -> str:
    if abs(value) <= TIE_TOLERANCE:
        return TIE
    return METHOD_ONE_BETTER if value < 0 else METHOD_TWO_BETTER


def crossover_k(m: int, n: int, k_max: int) -> Optional[int]:
    """Smallest k in [2, k_max] where Method Two's bound wins, if any."""
    if k_max < 2:
        raise DomainError(f"need k_max >= 2; got {k_max}")
    for k in range(2, k_max + 1):
        if l_exact(k, m, n) > 0:
            return k
    return None


def comparison_rows(m: int, n: int, k_min: int, k_max: int) -> list[ComparisonRow]:
    if not (2 <= k_min <= k_max <= K_RANGE_CAP):
        raise DomainError(
            f"k range must sit inside [2, {K_RANGE_CAP}]; got [{k_min}, {k_max}]")
    rows = []
    for k in range(k_min, k_max + 1):
        value = l_exact(k, m, n)
        rows.append(ComparisonRow(
            k=k,
            l_exact=value,
            t1=taylor_T(1, k, m, n),
            t2=taylor_T(2, k, m, n),
            t3=taylor_T(3, k, m, n),
            t4=taylor_T(4, k, m, n),
            sign=sign_of(value),
        ))
    return rows


def emit_comparison_csv(m: int, n: int, k_min: int, k_max: int) -> str:
    """CSV document with the fixed header k,l_exact,T1,T2,T3,T4,sign."""
    rows = comparison_rows(m, n, k_min, k_max)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.k, repr(row.l_exact), repr(row.t1), repr(row.t2),
                         repr(row.t3), repr(row.t4), row.sign])
    return buffer.getvalue()


# Default sweep regions for CLI batch output (artifact choice; nothing in the
# comparison depends on these).
DEFAULT_SWEEP = ((100, 50), (100, 100), (1000, 100))
