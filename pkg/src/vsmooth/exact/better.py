"""Exact certificate that the cubic smoothing beats the shifted root.

After substituting t = w / delta, Q = (2q/b)^(1/(q-1)) and u = (t + Q^q)^(1/q),
g - h is a positive multiple of

    K_u(u) = d (u^q - Q^q)^3 - c (u^q - Q^q)^2 + b (u^q - Q^q) - a (u - Q),

which has a double root at u = Q.  With beta = (1 + Q^q)^(1/q) the Moebius
image K_v(v) = (v + 1)^(3q) K_u(beta / (v + 1)) maps (0, beta) onto
(0, inf); if its coefficient sequence has exactly two sign changes, the
double root is the only root there and K_u >= 0 on [Q, beta].
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from vsmooth.exact.algebraic import AlgebraicValue, lincomb, raw_power, root
from vsmooth.exact.lower import quad_coeffs
from vsmooth.exact.polynomial import binomial, binomial_row
from vsmooth.exact.report import Check, Status, VerificationReport
from vsmooth.exact.signs import SignSequence, certified_signs

DEFAULT_START_BITS = 128
DEFAULT_MAX_BITS = 16384


@dataclass(frozen=True)
class PrecisionConfig:
    start_bits: int = DEFAULT_START_BITS
    max_bits: int = DEFAULT_MAX_BITS

    def __post_init__(self):
        if self.start_bits < 64:
            raise ValueError("start_bits must be at least 64")
        if self.max_bits < self.start_bits:
            raise ValueError("max_bits must be >= start_bits")


@dataclass(frozen=True)
class Radicals:
    """Q, Q^q, beta and the five blocks V..Z of the K_v expansion."""

    q: int
    ratio: Fraction  # Q^(q-1) = 2q / b
    Q: AlgebraicValue
    Qq: AlgebraicValue
    beta: AlgebraicValue
    V: AlgebraicValue
    W: AlgebraicValue
    X: AlgebraicValue
    Y: AlgebraicValue
    Z: AlgebraicValue


def radicals(q: int) -> Radicals:
    k = quad_coeffs(q)
    a, b, c, d = k.a, k.b, k.c, k.d
    ratio = Fraction(2 * q, b)
    Q = root(ratio, q - 1)
    Qq = Q**q  # rewritten to ratio * Q
    Q2q = Q ** (2 * q)
    Q3q = Q ** (3 * q)
    beta = root(1 + Qq, q)
    # beta^q = 1 + Q^q exactly
    bq = beta**q
    b2q = beta ** (2 * q)
    b3q = beta ** (3 * q)
    V = d * b3q
    W = -(3 * d * Qq + c) * b2q
    X = (3 * d * Q2q + 2 * c * Qq + b) * bq
    Y = -a * beta
    Z = a * Q - b * Qq - c * Q2q - d * Q3q
    return Radicals(q, ratio, Q, Qq, beta, V, W, X, Y, Z)


def kv_coefficients(q: int) -> list[AlgebraicValue]:
    """Coefficients of K_v in increasing degree, 3q + 1 of them.

    Re-derived from (v+1)^k expansions: the coefficient of v^i is
    [i = 0] V + C(q,i) W + C(2q,i) X + C(3q-1,i) Y + C(3q,i) Z.
    """
    R = radicals(q)
    rows = {
        "W": binomial_row(q),
        "X": binomial_row(2 * q),
        "Y": binomial_row(3 * q - 1),
        "Z": binomial_row(3 * q),
    }
    out = []
    for i in range(3 * q + 1):
        pairs = [(1, R.V)] if i == 0 else []
        for name, row in rows.items():
            if i < len(row):
                pairs.append((row[i], getattr(R, name)))
        out.append(lincomb(pairs))
    return out


def kv_coefficients_display(q: int, literal: bool = False) -> list[AlgebraicValue]:
    """K_v coefficients following the range-by-range summation layout.

    With ``literal=True`` the top range uses C(3q, 3q-1) for the Z weight,
    a known misprint kept for comparison; otherwise C(3q, 3q-i).
    """
    R = radicals(q)
    V, W, X, Y, Z = R.V, R.W, R.X, R.Y, R.Z
    out = [lincomb([(1, V), (1, W), (1, X), (1, Y), (1, Z)])]
    for i in range(1, 3 * q + 1):
        if i <= q:
            pairs = [
                (binomial(q, q - i), W),
                (binomial(2 * q, 2 * q - i), X),
                (binomial(3 * q - 1, 3 * q - 1 - i), Y),
                (binomial(3 * q, 3 * q - i), Z),
            ]
        elif i <= 2 * q:
            pairs = [
                (binomial(2 * q, 2 * q - i), X),
                (binomial(3 * q - 1, 3 * q - 1 - i), Y),
                (binomial(3 * q, 3 * q - i), Z),
            ]
        elif i <= 3 * q - 1:
            zw = binomial(3 * q, 3 * q - 1) if literal else binomial(3 * q, 3 * q - i)
            pairs = [(binomial(3 * q - 1, 3 * q - 1 - i), Y), (zw, Z)]
        else:
            pairs = [(1, Z)]
        out.append(lincomb(pairs))
    return out


def ku(q: int, u: AlgebraicValue | Fraction | int, uq: AlgebraicValue | None = None) -> AlgebraicValue:
    """K_u(u); ``uq`` overrides how u^q is formed (defaults to u**q)."""
    k = quad_coeffs(q)
    R = radicals(q)
    s = (u**q if uq is None else uq) - R.Qq
    return k.d * s**3 - k.c * s**2 + k.b * s - k.a * (u - R.Q)


def verify_better_bound(q: int, precision: PrecisionConfig | None = None) -> VerificationReport:
    precision = precision or PrecisionConfig()
    t0 = time.perf_counter()
    seq: SignSequence = certified_signs(
        kv_coefficients(q), precision.start_bits, precision.max_bits
    )
    evidence: dict = {"n_coeffs": len(seq.signs), "precision_bits": seq.max_bits}
    if not seq.resolved:
        status = Status.INDETERMINATE
        evidence["indeterminate_indices"] = list(seq.indeterminate)
    else:
        changes = seq.sign_changes
        evidence["sign_changes"] = changes
        evidence["sign_runs"] = [[s, n] for s, n in seq.runs()]
        status = Status.VERIFIED if changes == 2 else Status.FAILED
    return VerificationReport(q, Check.DESCARTES, status, evidence, time.perf_counter() - t0)


def ku_double_root_check(q: int, bits: int = 256, bound: float = 1e-25) -> VerificationReport:
    """K_u(Q) = K_u'(Q) = 0, via an exact identity and certified enclosures.

    u^q and u^(q-1) at u = Q are formed by interval powering rather than by
    the exact rewrite used for Q^q, so the enclosures are genuine numerical
    evidence rather than a symbolic cancellation.
    """
    t0 = time.perf_counter()
    k = quad_coeffs(q)
    R = radicals(q)
    identity = k.b * q * R.ratio == k.a
    u = R.Q
    uq = raw_power(u, q)
    uq1 = raw_power(u, q - 1)
    s = uq - R.Qq
    value = ku(q, u, uq=uq)
    slope = (
        3 * k.d * q * s**2 * uq1 - 2 * k.c * q * s * uq1 + k.b * q * uq1 - k.a
    )
    iv, dv = value.interval(bits), slope.interval(bits)
    val_mag, der_mag = float(iv.magnitude()), float(dv.magnitude())
    ok = identity and iv.contains(0) and dv.contains(0) and val_mag < bound and der_mag < bound
    evidence = {
        "identity": identity,
        "ku_bound": val_mag,
        "dku_bound": der_mag,
        "precision_bits": bits,
    }
    status = Status.VERIFIED if ok else Status.FAILED
    return VerificationReport(q, Check.DOUBLE_ROOT, status, evidence, time.perf_counter() - t0)
