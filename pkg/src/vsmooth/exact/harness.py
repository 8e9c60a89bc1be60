"""Brute-force root census of K_v, independent of the coefficient formulas.

K_v is evaluated by direct composition (v+1)^(3q) K_u(beta / (v+1)) in
high-precision floating point.  Odd-multiplicity roots show up as sign
changes of K_v on a dense log grid; even-multiplicity roots as sign changes
of K_v' at which K_v itself vanishes to working precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from vsmooth.exact.lower import quad_coeffs


@dataclass
class RootCensus:
    q: int
    roots: list[tuple[float, int]] = field(default_factory=list)  # (location, multiplicity)
    double_root_expected: float = 0.0

    @property
    def count(self) -> int:
        return sum(m for _, m in self.roots)


def _kv_functions(q: int, dps: int):
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    k = quad_coeffs(q)
    Q = ctx.power(ctx.mpf(2 * q) / k.b, ctx.mpf(1) / (q - 1))
    Qq = Q**q
    beta = ctx.power(1 + Qq, ctx.mpf(1) / q)

    def ku_parts(u):
        s = u**q - Qq
        val = k.d * s**3 - k.c * s**2 + k.b * s - k.a * (u - Q)
        dval = (3 * k.d * s**2 - 2 * k.c * s + k.b) * q * u ** (q - 1) - k.a
        return val, dval

    def kv(v):
        v = ctx.mpf(v)
        val, _ = ku_parts(beta / (v + 1))
        return (v + 1) ** (3 * q) * val

    def dkv(v):
        v = ctx.mpf(v)
        u = beta / (v + 1)
        val, dval = ku_parts(u)
        # d/dv [(v+1)^(3q) K_u(beta/(v+1))]
        return 3 * q * (v + 1) ** (3 * q - 1) * val - (v + 1) ** (3 * q - 2) * beta * dval

    return ctx, kv, dkv, Q, beta


def _bisect(ctx, fn, lo, hi, iters: int = 200):
    flo = ctx.sign(fn(lo))
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = ctx.sign(fn(mid))
        if fm == 0:
            return mid
        if fm == flo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def root_census(ctx, fn, dfn, grid, tiny) -> list[tuple[float, int]]:
    """Roots of ``fn`` between consecutive grid points: simple ones by sign
    change, double ones as critical points where ``fn`` vanishes to ``tiny``
    relative to its neighbouring grid values."""
    vals = [fn(v) for v in grid]
    dvals = [dfn(v) for v in grid]
    roots = []
    for i in range(1, len(grid) - 1):
        if vals[i] == 0:
            odd = ctx.sign(vals[i - 1]) * ctx.sign(vals[i + 1]) < 0
            roots.append((float(grid[i]), 1 if odd else 2))
    for i in range(len(grid) - 1):
        lo, hi = grid[i], grid[i + 1]
        if vals[i] == 0 or vals[i + 1] == 0:
            continue
        if ctx.sign(vals[i]) * ctx.sign(vals[i + 1]) < 0:
            roots.append((float(_bisect(ctx, fn, lo, hi)), 1))
        elif ctx.sign(dvals[i]) * ctx.sign(dvals[i + 1]) < 0:
            crit = _bisect(ctx, dfn, lo, hi)
            scale = max(abs(vals[i]), abs(vals[i + 1]), 1)
            if abs(fn(crit)) <= tiny * scale:
                roots.append((float(crit), 2))
    return sorted(roots)


def kv_root_census(
    q: int, v_max: float = 1e6, v_min: float = 1e-12, points: int = 20000, dps: int = 120
) -> RootCensus:
    ctx, kv, dkv, Q, beta = _kv_functions(q, dps)
    grid = [ctx.mpf(v_min) * (ctx.mpf(v_max) / v_min) ** (ctx.mpf(i) / (points - 1)) for i in range(points)]
    tiny = ctx.mpf(10) ** (-(dps // 2))
    return RootCensus(q, root_census(ctx, kv, dkv, grid, tiny), float(beta / Q - 1))
