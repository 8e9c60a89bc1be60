"""Dense univariate polynomials with Python integer coefficients.

A homogeneous bivariate polynomial in (L, t) of total degree n is stored
dehomogenized at L = 1: ``coeffs[i]`` multiplies ``L**(n - i) * t**i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def binomial_row(n: int) -> list[int]:
    """[C(n, 0), ..., C(n, n)] by the multiplicative recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1] * (n + 1)
    for i in range(n):
        row[i + 1] = row[i] * (n - i) // (i + 1)
    return row


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n (including negative n)."""
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end > 1 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end]) if coeffs else (0,)


@dataclass(frozen=True)
class ExactPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim([int(c) for c in self.coeffs]))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> ExactPolynomial:
        if not terms:
            return cls((0,))
        dense = [0] * (max(terms) + 1)
        for deg, c in terms.items():
            if deg < 0:
                raise ValueError("negative degree")
            dense[deg] += c
        return cls(tuple(dense))

    @property
    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def nonzero_terms(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: ExactPolynomial) -> ExactPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPolynomial(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> ExactPolynomial:
        return ExactPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: ExactPolynomial) -> ExactPolynomial:
        return self + (-other)

    def __mul__(self, other: ExactPolynomial | int) -> ExactPolynomial:
        if isinstance(other, int):
            return ExactPolynomial(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return ExactPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, t: int | Fraction) -> int | Fraction:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def homogeneous_value(self, L: int | Fraction, t: int | Fraction, total_degree: int):
        """Evaluate the homogenized form sum c_i L^(n-i) t^i."""
        return sum(c * L ** (total_degree - i) * t**i for i, c in enumerate(self.coeffs))

    def sign_changes(self) -> int:
        signs = [c > 0 for c in self.coeffs if c != 0]
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def one_minus_t_cubed() -> ExactPolynomial:
    """(L - t)^3 dehomogenized at L = 1."""
    return ExactPolynomial((1, -3, 3, -1))
