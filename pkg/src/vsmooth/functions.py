"""Univariate increasing concave models with closed-form derivatives.

Every model accepts a float or a numpy array for ``w`` and returns the same
shape.  Derivatives are analytic; nothing here differentiates numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

Number = float | np.ndarray


class DomainError(ValueError):
    """Argument outside the set where a model (or derivative) is defined."""


class Kind(str, Enum):
    ROOT = "root"
    LOG1P = "log1p"
    ARCSINH_SQRT = "arcsinh_sqrt"
    COUNTEREXAMPLE = "counterexample"
    LINEAR_COMBINATION = "linear_combination"


@dataclass(frozen=True)
class RootParams:
    p: Fraction | float
    q: int | None = None

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise DomainError(f"root exponent must lie in (0, 1), got {self.p}")
        if self.q is not None and Fraction(self.p) * self.q != 1:
            raise DomainError(f"p = {self.p} is not 1/{self.q}")


@dataclass(frozen=True)
class CounterexampleParams:
    eps: float
    phi: float

    def __post_init__(self):
        if not (self.eps > 0 and self.phi > 0):
            raise DomainError("eps and phi must be positive")

    @property
    def breakpoint(self) -> float:
        return 1.0 + self.eps

    @property
    def delta_min(self) -> float:
        """The evaluation point 1 + eps + phi used for the smoothing."""
        return 1.0 + self.eps + self.phi


def _wrap(fn: Callable[[np.ndarray], np.ndarray]) -> Callable[[Number], Number]:
    def inner(w):
        arr = np.asarray(w, dtype=float)
        out = fn(arr)
        return float(out) if arr.ndim == 0 else out

    return inner


def _require(cond: bool | np.ndarray, msg: str) -> None:
    if not np.all(cond):
        raise DomainError(msg)


@dataclass(frozen=True)
class FunctionModel:
    """f with f(0) = 0, plus f', f'' and optionally (f')^-1.

    ``smooth_above`` is the threshold beyond which f is twice
    differentiable; the cubic construction needs delta > smooth_above.
    """

    kind: Kind
    label: str
    eval: Callable[[Number], Number]
    deriv1: Callable[[Number], Number]
    deriv2: Callable[[Number], Number]
    inverse_deriv1: Callable[[float], float] | None = None
    smooth_above: float = 0.0
    params: object = field(default=None, compare=False)

    def __call__(self, w: Number) -> Number:
        return self.eval(w)

    def twice_differentiable_at(self, w: float) -> bool:
        return w > self.smooth_above

    @property
    def has_inverse_deriv1(self) -> bool:
        return self.inverse_deriv1 is not None


def make_root(p: Fraction | float | int) -> FunctionModel:
    """w**p for 0 < p < 1; a Fraction 1/q keeps q for the exact engines."""
    if isinstance(p, Fraction):
        params = RootParams(p, p.denominator if p.numerator == 1 else None)
    else:
        params = RootParams(float(p))
    pf = float(params.p)

    def f(w):
        _require(w >= 0, "root function needs w >= 0")
        return np.power(w, pf)

    def d1(w):
        _require(w > 0, "f' of a root is undefined at w <= 0")
        return pf * np.power(w, pf - 1.0)

    def d2(w):
        _require(w > 0, "f'' of a root is undefined at w <= 0")
        return pf * (pf - 1.0) * np.power(w, pf - 2.0)

    def inv(y):
        if y <= 0:
            raise DomainError("f' of a root only takes positive values")
        return (y / pf) ** (1.0 / (pf - 1.0))

    return FunctionModel(Kind.ROOT, f"root:{params.p}", _wrap(f), _wrap(d1), _wrap(d2), inv, 0.0, params)


def make_log1p() -> FunctionModel:
    def f(w):
        _require(w >= 0, "log1p model needs w >= 0")
        return np.log1p(w)

    def d1(w):
        _require(w >= 0, "log1p model needs w >= 0")
        return 1.0 / (1.0 + w)

    def d2(w):
        _require(w >= 0, "log1p model needs w >= 0")
        return -1.0 / (1.0 + w) ** 2

    def inv(y):
        if not 0 < y <= 1:
            raise DomainError("f' of log(1+w) takes values in (0, 1]")
        return 1.0 / y - 1.0

    return FunctionModel(Kind.LOG1P, "log1p", _wrap(f), _wrap(d1), _wrap(d2), inv)


def make_arcsinh_sqrt() -> FunctionModel:
    def f(w):
        _require(w >= 0, "arcsinh-sqrt model needs w >= 0")
        return np.arcsinh(np.sqrt(w))

    def d1(w):
        _require(w > 0, "f' of arcsinh(sqrt w) is undefined at w <= 0")
        return 1.0 / (2.0 * np.sqrt(w) * np.sqrt(w + 1.0))

    def d2(w):
        _require(w > 0, "f'' of arcsinh(sqrt w) is undefined at w <= 0")
        return (-2.0 * w - 1.0) / (4.0 * w**1.5 * (w + 1.0) ** 1.5)

    def inv(y):
        if y <= 0:
            raise DomainError("f' of arcsinh(sqrt w) only takes positive values")
        # w (w + 1) = 1 / (4 y^2)
        s = 1.0 / (4.0 * y * y)
        return 2.0 * s / (1.0 + math.sqrt(1.0 + 4.0 * s))

    return FunctionModel(Kind.ARCSINH_SQRT, "arcsinh-sqrt", _wrap(f), _wrap(d1), _wrap(d2), inv)


def make_counterexample(eps: float, phi: float) -> FunctionModel:
    """Linear up to 1 + eps, then a shifted square root; C^1 but with a kink in f''."""
    params = CounterexampleParams(float(eps), float(phi))
    e = params.eps
    brk = params.breakpoint
    slope = 1.0 / (2.0 * math.sqrt(e))
    offset = (1.0 + e) * slope - math.sqrt(e)

    def f(w):
        _require(w >= 0, "counterexample model needs w >= 0")
        upper = np.sqrt(np.maximum(w - 1.0, 0.0)) + offset
        return np.where(w >= brk, upper, slope * w)

    def d1(w):
        _require(w >= 0, "counterexample model needs w >= 0")
        return np.where(w >= brk, 0.5 / np.sqrt(np.maximum(w - 1.0, e)), slope)

    def d2(w):
        _require(w >= 0, "counterexample model needs w >= 0")
        _require(w != brk, "counterexample is not twice differentiable at 1 + eps")
        return np.where(w > brk, -0.25 / np.maximum(w - 1.0, e) ** 1.5, 0.0)

    return FunctionModel(
        Kind.COUNTEREXAMPLE, f"counterexample:{e},{params.phi}",
        _wrap(f), _wrap(d1), _wrap(d2), None, brk, params,
    )


def combine(models: Sequence[FunctionModel], weights: Sequence[float]) -> FunctionModel:
    """Positive combination sum_k weights[k] * models[k]."""
    models, weights = list(models), [float(x) for x in weights]
    if not models:
        raise ValueError("need at least one model")
    if len(models) != len(weights):
        raise ValueError("models and weights differ in length")
    if any(not x > 0 for x in weights):
        raise ValueError("weights must be positive")

    def mix(attr):
        def fn(w):
            return sum(c * getattr(m, attr)(w) for c, m in zip(weights, models))

        return fn

    label = "+".join(f"{m.label}*{c:g}" for m, c in zip(models, weights))
    return FunctionModel(
        Kind.LINEAR_COMBINATION, f"sum:{label}",
        mix("eval"), mix("deriv1"), mix("deriv2"), None,
        max(m.smooth_above for m in models), tuple(zip(models, weights)),
    )


def parse_number(text: str) -> Fraction | float:
    """'1/3' -> Fraction(1, 3); anything else -> float."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return float(text)


def parse_function_spec(spec: str) -> FunctionModel:
    """Parse ``root:<p>``, ``log1p``, ``arcsinh-sqrt``,
    ``counterexample:<eps>,<phi>`` or ``sum:<spec>*<w>+<spec>*<w>...``."""
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    try:
        if head == "sum":
            models, weights = [], []
            for part in rest.split("+"):
                sub, star, w = part.rpartition("*")
                if not star:
                    sub, w = part, "1"
                models.append(parse_function_spec(sub))
                weights.append(float(parse_number(w)))
            return combine(models, weights)
        if head == "root":
            return make_root(parse_number(rest))
        if head == "log1p" and not rest:
            return make_log1p()
        if head == "arcsinh-sqrt" and not rest:
            return make_arcsinh_sqrt()
        if head == "counterexample":
            eps, phi = rest.split(",")
            return make_counterexample(float(eps), float(phi))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad function spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown function spec {spec!r}")
