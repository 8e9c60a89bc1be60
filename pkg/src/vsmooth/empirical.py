"""Grid evidence for h <= g <= f on [0, delta] (roots only)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from vsmooth.smoothing import ShiftedBound, build_cubic_root, lambda_hat_root

ORDER_RTOL = 1e-14


@dataclass(frozen=True)
class OrderingResult:
    p: float
    delta: float
    points: int
    worst_g_over_f: float  # max of (g - f) / max(1, f)
    worst_h_over_g: float  # max of (h - g) / max(1, f)
    slope_mismatch: float  # |h'(0) - g'(0)| / g'(0)

    def holds(self, rtol: float = ORDER_RTOL) -> bool:
        return self.worst_g_over_f <= rtol and self.worst_h_over_g <= rtol


def ordering_on_grid(p: Fraction | float, delta: float, points: int = 10001) -> OrderingResult:
    s = build_cubic_root(p, delta)
    h = ShiftedBound(lambda_hat_root(p, delta), s.tail)
    w = np.linspace(0.0, delta, points)
    f = s.tail.eval(w)
    g = s.eval(w)
    hv = h.eval(w)
    return OrderingResult(
        p=float(p),
        delta=float(delta),
        points=points,
        worst_g_over_f=float(np.max((g - f) / np.maximum(1.0, f))),
        worst_h_over_g=float(np.max((hv - g) / np.maximum(1.0, f))),
        slope_mismatch=abs(h.deriv1(0.0) - s.C) / s.C,
    )
