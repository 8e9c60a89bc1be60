"""The homogeneous-cubic smoothing g, the shifted bound h and related checks.

g(w) = A w^3 + B w^2 + C w on [0, delta) and g = f on [delta, inf), with
A, B, C chosen so that g, g', g'' match f, f', f'' at delta.  The shifted
bound is h(w) = f(w + lam) - f(lam); lam is chosen so that h'(0) = g'(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from vsmooth.functions import DomainError, FunctionModel, Number, make_root

BISECT_LO = 1e-300
BISECT_SPAN = 1e6
BISECT_ITERS = 200
LAMBDA_RTOL = 1e-10


def _arr(w) -> np.ndarray:
    arr = np.asarray(w, dtype=float)
    if np.any(arr < 0):
        raise DomainError("smoothing is defined for w >= 0")
    return arr


def _out(arr: np.ndarray, like: np.ndarray) -> Number:
    return float(arr) if like.ndim == 0 else arr


@dataclass(frozen=True)
class CubicSmoothing:
    delta: float
    A: float
    B: float
    C: float
    tail: FunctionModel

    def cubic(self, w: Number) -> Number:
        """The polynomial branch alone, at any w."""
        w = np.asarray(w, dtype=float)
        return _out(((self.A * w + self.B) * w + self.C) * w, w)

    def cubic_d1(self, w: Number) -> Number:
        w = np.asarray(w, dtype=float)
        return _out((3.0 * self.A * w + 2.0 * self.B) * w + self.C, w)

    def cubic_d2(self, w: Number) -> Number:
        w = np.asarray(w, dtype=float)
        return _out(6.0 * self.A * w + 2.0 * self.B, w)

    @property
    def third_derivative(self) -> float:
        return 6.0 * self.A

    def _piecewise(self, w, poly, tail) -> Number:
        arr = _arr(w)
        below = arr < self.delta
        if arr.ndim == 0:
            return float(poly(arr)) if below else float(tail(float(arr)))
        out = np.empty_like(arr)
        out[below] = poly(arr[below])
        if np.any(~below):
            out[~below] = tail(arr[~below])
        return out

    def eval(self, w: Number) -> Number:
        return self._piecewise(w, self.cubic, self.tail.eval)

    def deriv1(self, w: Number) -> Number:
        return self._piecewise(w, self.cubic_d1, self.tail.deriv1)

    def deriv2(self, w: Number) -> Number:
        return self._piecewise(w, self.cubic_d2, self.tail.deriv2)

    __call__ = eval


def _check_delta(f: FunctionModel, delta: float) -> float:
    delta = float(delta)
    if not delta > 0 or not math.isfinite(delta):
        raise DomainError(f"delta must be positive and finite, got {delta}")
    if not f.twice_differentiable_at(delta):
        raise DomainError(f"{f.label} is not twice differentiable at delta = {delta}")
    return delta


def build_cubic(f: FunctionModel, delta: float) -> CubicSmoothing:
    delta = _check_delta(f, delta)
    f0 = f.eval(delta)
    f1 = delta * f.deriv1(delta)
    f2 = delta * delta * f.deriv2(delta)
    # every coefficient is written through the same difference f0 - f1 (exact
    # when it cancels), so rounding in f0, f1 drops out of the matching identities
    diff = f0 - f1
    A = (diff + 0.5 * f2) / delta**3
    B = (-3.0 * diff - f2) / delta**2
    C = (3.0 * diff + f1 + 0.5 * f2) / delta
    return CubicSmoothing(delta, A, B, C, f)


def root_coefficients(p: float, delta: float) -> tuple[float, float, float]:
    """Closed-form A, B, C for f(w) = w**p (factored for accuracy near p = 1)."""
    return (
        delta ** (p - 3.0) * (1.0 - p) * (2.0 - p) / 2.0,
        -(delta ** (p - 2.0)) * (1.0 - p) * (3.0 - p),
        delta ** (p - 1.0) * (2.0 - p) * (3.0 - p) / 2.0,
    )


def build_cubic_root(p: Fraction | float, delta: float) -> CubicSmoothing:
    f = make_root(p)
    delta = _check_delta(f, delta)
    A, B, C = root_coefficients(float(p), delta)
    return CubicSmoothing(delta, A, B, C, f)


def eval_g(s: CubicSmoothing, w: Number) -> Number:
    return s.eval(w)


def eval_g_d1(s: CubicSmoothing, w: Number) -> Number:
    return s.deriv1(w)


def eval_g_d2(s: CubicSmoothing, w: Number) -> Number:
    return s.deriv2(w)


class TDelta(NamedTuple):
    satisfied: bool
    margin: float


def check_tdelta(f: FunctionModel, delta: float) -> TDelta:
    """f''(delta) >= (2/delta) (f'(delta) - f(delta)/delta), with its margin."""
    delta = _check_delta(f, delta)
    margin = f.deriv2(delta) - (2.0 / delta) * (f.deriv1(delta) - f.eval(delta) / delta)
    return TDelta(bool(margin >= 0), float(margin))


def _bisect_inverse_deriv1(f: FunctionModel, y: float, delta: float) -> float:
    """Solve f'(lam) = y for decreasing f' by geometric bisection."""
    lo, hi = BISECT_LO, delta * BISECT_SPAN
    if not f.deriv1(lo) >= y >= f.deriv1(hi):
        raise DomainError(f"g'(0) = {y} is outside the range of f' on [{lo}, {hi}]")
    for _ in range(BISECT_ITERS):
        mid = math.sqrt(lo * hi)
        if mid <= lo or mid >= hi:
            break
        if f.deriv1(mid) > y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4 * np.finfo(float).eps * hi:
            break
    return 0.5 * (lo + hi)


def lambda_hat(f: FunctionModel, s: CubicSmoothing) -> float:
    """The shift lam with f'(lam) = g'(0) = C."""
    y = s.C
    if not y > 0:
        raise DomainError(f"g'(0) = {y} is not a value of a positive decreasing f'")
    if f.inverse_deriv1 is not None:
        lam = f.inverse_deriv1(y)
    else:
        lam = _bisect_inverse_deriv1(f, y, s.delta)
    if not lam > 0:
        raise DomainError(f"no positive shift matches g'(0) = {y}")
    err = abs(f.deriv1(lam) - y)
    if err > LAMBDA_RTOL * abs(y):
        raise ArithmeticError(f"f'(lam) misses g'(0) by {err:.3g}")
    return float(lam)


def lambda_hat_root(p: Fraction | float, delta: float) -> float:
    p = float(p)
    if not 0 < p < 1:
        raise DomainError("p must lie in (0, 1)")
    if not delta > 0:
        raise DomainError("delta must be positive")
    return delta * ((2.0 - p) * (3.0 - p) / (2.0 * p)) ** (1.0 / (p - 1.0))


@dataclass(frozen=True)
class ShiftedBound:
    lam: float
    base: FunctionModel

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("shift must be positive")

    def eval(self, w: Number) -> Number:
        arr = _arr(w)
        return _out(np.asarray(self.base.eval(arr + self.lam)) - self.base.eval(self.lam), arr)

    def deriv1(self, w: Number) -> Number:
        arr = _arr(w)
        return self.base.deriv1(arr + self.lam) if arr.ndim else self.base.deriv1(float(arr) + self.lam)

    __call__ = eval


def shifted_bound(f: FunctionModel, s: CubicSmoothing) -> ShiftedBound:
    return ShiftedBound(lambda_hat(f, s), f)


def eval_h(b: ShiftedBound, w: Number) -> Number:
    return b.eval(w)


def linear_extrapolation(f: FunctionModel, delta: float, w: Number) -> Number:
    """Tangent line of f at delta below delta, f itself above."""
    arr = _arr(w)
    fd, d1 = f.eval(delta), f.deriv1(delta)
    below = arr < delta
    line = fd + d1 * (arr - delta)
    if arr.ndim == 0:
        return float(line) if below else float(f.eval(float(arr)))
    out = line.copy()
    if np.any(~below):
        out[~below] = f.eval(arr[~below])
    return out


@dataclass(frozen=True)
class OddSmoothing:
    """Odd extension of a root smoothing to the whole real line.

    g(w) = sign(w) g_+(|w|): concave and increasing for w >= 0, its mirror
    image for w <= 0.  C^1 at 0 (slope C) but g'' jumps from -2B to 2B there,
    so ``deriv2(0)`` is nan.
    """

    base: CubicSmoothing

    def eval(self, w: Number) -> Number:
        arr = np.asarray(w, dtype=float)
        return _out(np.sign(arr) * self.base.eval(np.abs(arr)), arr)

    def deriv1(self, w: Number) -> Number:
        arr = np.asarray(w, dtype=float)
        return _out(np.asarray(self.base.deriv1(np.abs(arr)), dtype=float), arr)

    def deriv2(self, w: Number) -> Number:
        arr = np.asarray(w, dtype=float)
        with np.errstate(invalid="ignore"):
            vals = np.asarray(self.base.deriv2(np.abs(arr)), dtype=float)
        out = np.where(arr == 0, np.nan, np.sign(arr) * vals)
        return _out(out, arr)

    def left_cubic(self, w: Number) -> Number:
        """A w^3 - B w^2 + C w, the branch used on [-delta, 0]."""
        s = self.base
        w = np.asarray(w, dtype=float)
        return _out(((s.A * w - s.B) * w + s.C) * w, w)

    __call__ = eval


def build_odd_extension(p: Fraction | float, delta: float) -> OddSmoothing:
    return OddSmoothing(build_cubic_root(p, delta))
