"""Exact certificate that the cubic smoothing lower-bounds w**(1/q).

On [0, delta], with t = w**(1/q) and L = delta**(1/q), f - g equals a
positive monomial times

    P_q = a L^(3q-1) - b L^(2q) t^(q-1) + c L^q t^(2q-1) - d t^(3q-1),

and P_q = Q_q * (L - t)^3 where every coefficient of Q_q is a positive
integer.  Both facts are checked here in integer arithmetic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from vsmooth.exact.polynomial import ExactPolynomial, binomial, one_minus_t_cubed
from vsmooth.exact.report import Check, Status, VerificationReport


@dataclass(frozen=True)
class QuadCoeffs:
    q: int
    a: int
    b: int
    c: int
    d: int


def quad_coeffs(q: int) -> QuadCoeffs:
    _check_q(q)
    return QuadCoeffs(
        q=q,
        a=2 * q * q,
        b=6 * q * q - 5 * q + 1,
        c=6 * q * q - 8 * q + 2,
        d=2 * q * q - 3 * q + 1,
    )


def _check_q(q: int) -> None:
    if not isinstance(q, int) or isinstance(q, bool):
        raise TypeError("q must be an int")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")


def qq_terms(q: int) -> ExactPolynomial:
    """Cofactor Q_q of (L - t)^3 in P_q, coefficients indexed by the power of t."""
    k = quad_coeffs(q)
    coeffs = []
    for i in range(3 * q - 3):
        v = binomial(i + 2, 2) * k.a
        if i >= q - 1:
            v -= binomial(i - q + 3, 2) * k.b
        if i >= 2 * q - 1:
            v += binomial(i - 2 * q + 3, 2) * k.c
        coeffs.append(v)
    return ExactPolynomial(tuple(coeffs))


def qq_terms_shifted(q: int) -> list[int]:
    """The same coefficients written with the index running from 1.

    Uses C(i+1, 2) a - C(i-q+2, 2) b + C(i-2q+2, 2) c for i = 1..3q-3; kept
    to confirm both indexings describe the same polynomial.
    """
    k = quad_coeffs(q)
    out = []
    for i in range(1, 3 * q - 2):
        v = binomial(i + 1, 2) * k.a
        if i >= q:
            v -= binomial(i - q + 2, 2) * k.b
        if i >= 2 * q:
            v += binomial(i - 2 * q + 2, 2) * k.c
        out.append(v)
    return out


def pq_poly(q: int) -> ExactPolynomial:
    k = quad_coeffs(q)
    return ExactPolynomial.from_terms(
        {0: k.a, q - 1: -k.b, 2 * q - 1: k.c, 3 * q - 1: -k.d}
    )


def positivity_closed_forms(q: int) -> dict[str, Fraction]:
    """Endpoint values of the real extensions of the type-2 and type-3 coefficients."""
    _check_q(q)
    q = Fraction(q)
    return {
        "C2(q)": q**4 + q**3 - 6 * q**2 + 5 * q - 1,
        "C2(2q-1)": q**4 - Fraction(5, 2) * q**3 + 2 * q**2 - q / 2,
        "C3(3q-3)": 2 * q**2 - 3 * q + 1,
    }


def verify_factorization(q: int) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = qq_terms(q) * one_minus_t_cubed()
    rhs = pq_poly(q)
    evidence: dict = {"degree": rhs.degree}
    if lhs == rhs:
        status = Status.VERIFIED
    else:
        status = Status.FAILED
        n = max(len(lhs.coeffs), len(rhs.coeffs))
        evidence["offending_index"] = next(i for i in range(n) if lhs[i] != rhs[i])
    return VerificationReport(q, Check.FACTORIZATION, status, evidence, time.perf_counter() - t0)


def verify_positivity(q: int) -> VerificationReport:
    t0 = time.perf_counter()
    coeffs = qq_terms(q).coeffs
    evidence: dict = {"n_coeffs": len(coeffs), "min_coeff": min(coeffs)}
    bad = [i for i, c in enumerate(coeffs) if c <= 0]
    closed = positivity_closed_forms(q)
    # the closed forms are the coefficients at indices q-1, 2q-2 and 3q-4
    anchors = {"C2(q)": q - 1, "C2(2q-1)": 2 * q - 2, "C3(3q-3)": 3 * q - 4}
    mismatched = [name for name, i in anchors.items() if closed[name] != coeffs[i]]
    nonpositive = [name for name, v in closed.items() if v <= 0]
    if bad:
        evidence["offending_index"] = bad[0]
    if mismatched:
        evidence["closed_form_mismatch"] = mismatched
    if nonpositive:
        evidence["closed_form_nonpositive"] = nonpositive
    status = Status.FAILED if (bad or mismatched or nonpositive) else Status.VERIFIED
    return VerificationReport(q, Check.POSITIVITY, status, evidence, time.perf_counter() - t0)
