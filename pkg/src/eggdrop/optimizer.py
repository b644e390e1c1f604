"""Closed-form step-size minimizer with numeric diagnostics.

Minimizes f(S) = n/S + a*((n+b)/n)^(1/a) * S^(1/a) over S in (0, n] for
a > 0, b >= 0, n > 1. The minimum is at S* = n*(n+b)^(-1/(a+1)) with value
f(S*) = (a+1)*(n+b)^(1/(a+1)); the diagnostics confirm f'(S*) ~ 0,
f''(S*) > 0 and f'(n) > 0, and a brute-force grid can cross-check the
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Rational, float_to_fraction, snapped_ceil
from .errors import DomainError


@dataclass(frozen=True)
class LemmaParams:
    a: float
    b: float
    n: float

    def __post_init__(self):
        if not (self.a > 0 and self.b >= 0 and self.n > 1):
            raise DomainError(
                f"need a > 0, b >= 0, n > 1; got a={self.a}, b={self.b}, n={self.n}")


@dataclass(frozen=True)
class Diagnostics:
    fprime_at_star: float
    fsecond_at_star: float
    fprime_at_endpoint: float


@dataclass(frozen=True)
class MinimizerResult:
    s_star: float
    f_star: float
    diagnostics: Diagnostics

    def derivative_scale(self, params: LemmaParams) -> float:
        return max(1.0, params.n)


def objective(params: LemmaParams, s: float) -> float:
    a, b, n = params.a, params.b, params.n
    return n / s + a * ((n + b) / n) ** (1.0 / a) * s ** (1.0 / a)


def derivative(params: LemmaParams, s: float) -> float:
    a, b, n = params.a, params.b, params.n
    return -n * s ** -2.0 + ((n + b) / n) ** (1.0 / a) * s ** ((1.0 - a) / a)


def second_derivative(params: LemmaParams, s: float) -> float:
    a, b, n = params.a, params.b, params.n
    return (2.0 * n * s ** -3.0
            + (1.0 - a) / a * ((n + b) / n) ** (1.0 / a) * s ** ((1.0 - 2.0 * a) / a))


def second_derivative_simplified(params: LemmaParams, s_star: float) -> float:
    """The algebraically reduced form n*(1+a)/a * S*^-3 (equals the raw one)."""
    a, n = params.a, params.n
    return n * (1.0 + a) / a * s_star ** -3.0


def endpoint_derivative(params: LemmaParams) -> float:
    a, b, n = params.a, params.b, params.n
    return ((n + b) ** (1.0 / a) - 1.0) / n


def lemma_minimize(params: LemmaParams) -> MinimizerResult:
    a, b, n = params.a, params.b, params.n
    s_star = n * (n + b) ** (-1.0 / (a + 1.0))
    f_star = (a + 1.0) * (n + b) ** (1.0 / (a + 1.0))
    diag = Diagnostics(
        fprime_at_star=derivative(params, s_star),
        fsecond_at_star=second_derivative(params, s_star),
        fprime_at_endpoint=endpoint_derivative(params),
    )
    return MinimizerResult(s_star, f_star, diag)


def lemma_grid_verify(params: LemmaParams, resolution: float,
                      rel_tol: float = 1e-9) -> bool:
    """Brute-force check that the closed form beats every grid sample.

    Samples S = resolution, 2*resolution, ..., n and confirms
    f(S*) <= f(S) + rel_tol*scale everywhere, and that f blows up toward the
    left endpoint (the smallest sample exceeds f(S*)).
    """
    if resolution <= 0:
        raise DomainError("resolution must be positive")
    result = lemma_minimize(params)
    count = max(2, int(params.n / resolution))
    grid = np.linspace(resolution, params.n, count)
    a, b, n = params.a, params.b, params.n
    values = n / grid + a * ((n + b) / n) ** (1.0 / a) * grid ** (1.0 / a)
    scale = max(1.0, abs(result.f_star))
    if not bool(np.all(result.f_star <= values + rel_tol * scale)):
        return False
    return bool(values[0] > result.f_star)


def integer_step(s_star: float, mode: str) -> Rational:
    """Per-mode step: lattice rounds up to an integer (min 1), abstract keeps
    an exact rational within 1e-12 relative of the continuous optimum."""
    if s_star <= 0:
        raise DomainError("step must be positive")
    if mode == "lattice":
        return max(1, snapped_ceil(s_star))
    if mode == "abstract":
        frac = float_to_fraction(s_star)
        return frac if frac > 0 else Fraction(s_star)
    raise DomainError(f"unknown mode {mode!r}")


def phase_step(eggs: int, dimension_offset: int, driving: float,
               companion_total: float, mode: str) -> Rational:
    """Step for a jump phase with ``eggs`` intact eggs.

    ``dimension_offset`` is the problem's egg floor (d for point problems,
    1 for the known-slope line), so the lemma parameter is
    a = eggs - dimension_offset, with b the companion extent and n the
    driving extent of the current sub-box.
    """
    a = eggs - dimension_offset
    if a <= 0:
        raise DomainError("jump phases need more eggs than the base case")
    if driving <= 1:
        # Lemma 1 needs n > 1; tiny boxes fall back to a direct walk upstream.
        raise DomainError("driving extent too small for a jump phase")
    params = LemmaParams(a=float(a), b=float(companion_total), n=float(driving))
    return integer_step(lemma_minimize(params).s_star, mode)


def closed_form_bound(kind: str, dims: tuple[int, ...], k: int) -> int:
    """Paper-style worst-case ceilings per problem kind."""
    total = sum(dims)
    d = len(dims)
    if kind == "point":
        e = k - d + 1
        if e < 1:
            raise DomainError(f"need k >= d; got k={k}, d={d}")
        return snapped_ceil(e * total ** (1.0 / e))
    if kind == "line-m1":
        if k < 1:
            raise DomainError("need k >= 1")
        return snapped_ceil(k * total ** (1.0 / k))
    if kind == "line-m2":
        if k < 2:
            raise DomainError("need k >= 2")
        m = dims[0]
        return snapped_ceil((k - 1) * m ** (1.0 / (k - 1))) + 1
    raise DomainError(f"no closed-form bound for kind {kind!r}")
