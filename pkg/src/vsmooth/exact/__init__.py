"""Exact and certified-interval verification engines."""

from vsmooth.exact.algebraic import AlgebraicValue, Const, root
from vsmooth.exact.better import (
    PrecisionConfig,
    kv_coefficients,
    ku_double_root_check,
    radicals,
    verify_better_bound,
)
from vsmooth.exact.lower import (
    QuadCoeffs,
    pq_poly,
    qq_terms,
    quad_coeffs,
    verify_factorization,
    verify_positivity,
)
from vsmooth.exact.polynomial import ExactPolynomial
from vsmooth.exact.report import Check, Status, VerificationReport
from vsmooth.exact.signs import SignSequence, certified_signs

__all__ = [
    "AlgebraicValue", "Check", "Const", "ExactPolynomial", "PrecisionConfig", "QuadCoeffs",
    "SignSequence", "Status", "VerificationReport", "certified_signs", "ku_double_root_check",
    "kv_coefficients", "pq_poly", "qq_terms", "quad_coeffs", "radicals", "root",
    "verify_better_bound", "verify_factorization", "verify_positivity",
]
