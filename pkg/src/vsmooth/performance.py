"""Average relative performance of g and h against w**p on [0, delta].

Both measures are delta-independent; after w = delta * v they reduce to
integrals over [0, 1].  The g-measure has the closed form 3 / (4 - p); the
h-measure is integrated numerically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np
from scipy import integrate

from vsmooth.functions import DomainError

DEFAULT_QUAD_TOL = 1e-10


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PerfResult:
    p: float
    g_measure: float
    h_measure: float
    quad_abs_err_estimate: float

    @property
    def gap(self) -> float:
        return self.g_measure - self.h_measure


def _check_p(p) -> None:
    if not 0 < p < 1:
        raise DomainError(f"p must lie in (0, 1), got {p}")


def avg_perf_g(p: Fraction | float) -> Fraction | float:
    """3 / (4 - p); exact when p is a Fraction."""
    _check_p(p)
    if isinstance(p, Fraction):
        return Fraction(3) / (4 - p)
    return 3.0 / (4.0 - float(p))


def shift_ratio(p: float) -> float:
    """lam_hat / delta for w**p: ((p^2 - 5p + 6) / (2p))^(1 / (p - 1))."""
    _check_p(p)
    p = float(p)
    return ((2.0 - p) * (3.0 - p) / (2.0 * p)) ** (1.0 / (p - 1.0))


def quad(fn: Callable[[float], float], a: float, b: float, tol: float = DEFAULT_QUAD_TOL) -> tuple[float, float]:
    """Adaptive Gauss-Kronrod on [a, b]; raises unless the error estimate meets tol."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fn, a, b, epsabs=tol, epsrel=0.0, limit=500)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(str(exc)) from exc
    if err > tol:
        raise QuadratureError(f"error estimate {err:.3g} exceeds tolerance {tol:.3g}")
    return val, err


def h_integrand(p: float) -> Callable[[float], float]:
    """v -> ((v + P)^p - P^p) / v^p, with the removable value 0 at v = 0."""
    P = shift_ratio(p)
    Pp = P**p

    def fn(v: float) -> float:
        if v == 0.0:
            return 0.0
        return Pp * math.expm1(p * math.log1p(v / P)) / v**p

    return fn


def avg_perf_h_with_error(p: float, tol: float = DEFAULT_QUAD_TOL) -> tuple[float, float]:
    _check_p(p)
    return quad(h_integrand(float(p)), 0.0, 1.0, tol)


def avg_perf_h(p: float, tol: float = DEFAULT_QUAD_TOL) -> float:
    return avg_perf_h_with_error(p, tol)[0]


def avg_perf_h_half_closed_form() -> float:
    """The h-measure at p = 1/2 in closed form."""
    r = math.sqrt(241.0)
    return 8.0 / 15.0 * (-1.0 + (3615.0 + 16.0 * r * math.asinh(15.0 / 4.0)) / (120.0 * r))


def average_ratio(
    approx: Callable[[float], float], f: Callable[[float], float], delta: float, tol: float = 1e-12
) -> float:
    """(1/delta) * integral_0^delta approx(w) / f(w) dw, integrand 0 at w = 0."""

    def fn(w: float) -> float:
        return 0.0 if w == 0.0 else approx(w) / f(w)

    val, _ = quad(fn, 0.0, delta, tol * max(1.0, delta))
    return val / delta


def perf_result(p: float, tol: float = DEFAULT_QUAD_TOL) -> PerfResult:
    h, err = avg_perf_h_with_error(p, tol)
    return PerfResult(float(p), float(avg_perf_g(float(p))), h, err)


def perf_sweep(p_grid: Iterable[float], tol: float = DEFAULT_QUAD_TOL) -> list[PerfResult]:
    return [perf_result(p, tol) for p in p_grid]


def sweep_is_monotone(results: list[PerfResult]) -> tuple[bool, bool]:
    """(g-measure strictly increasing in p, gap strictly decreasing in p)."""
    rs = sorted(results, key=lambda r: r.p)
    g = np.array([r.g_measure for r in rs])
    gap = np.array([r.gap for r in rs])
    return bool(np.all(np.diff(g) > 0)), bool(np.all(np.diff(gap) < 0))
