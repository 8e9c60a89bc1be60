"""Outward-rounded real intervals on MPFR floats.

Every operation rounds the lower endpoint toward -inf and the upper
endpoint toward +inf, so the exact result of the operation applied to any
points of the operands lies inside the returned interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq, mpz


@lru_cache(maxsize=64)
def _contexts(bits: int) -> tuple[gmpy2.context, gmpy2.context]:
    down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
    return down, up


class InsufficientPrecision(ArithmeticError):
    """Raised when an interval straddles a singularity at the working precision."""


@dataclass(frozen=True, slots=True)
class Interval:
    lo: mpfr
    hi: mpfr
    bits: int

    @classmethod
    def exact(cls, x: int | Fraction, bits: int) -> Interval:
        down, up = _contexts(bits)
        if isinstance(x, Fraction):
            v = mpq(x.numerator, x.denominator)
        else:
            v = mpz(x)
        return cls(mpfr(v, bits, context=down), mpfr(v, bits, context=up), bits)

    @property
    def width(self) -> mpfr:
        _, up = _contexts(self.bits)
        return up.sub(self.hi, self.lo)

    @property
    def mid(self) -> mpfr:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def sign(self) -> int | None:
        """+1 / -1 if the interval excludes zero, otherwise None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def magnitude(self) -> mpfr:
        _, up = _contexts(self.bits)
        return max(up.abs(self.lo), up.abs(self.hi))

    def intersect(self, other: Interval) -> Interval:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise ArithmeticError("disjoint enclosures of the same value")
        return Interval(lo, hi, max(self.bits, other.bits))

    def __neg__(self) -> Interval:
        # mpfr's unary minus rounds to the global context; use ours
        down, up = _contexts(self.bits)
        return Interval(down.minus(self.hi), up.minus(self.lo), self.bits)

    def __add__(self, other: Interval) -> Interval:
        down, up = _contexts(self.bits)
        return Interval(down.add(self.lo, other.lo), up.add(self.hi, other.hi), self.bits)

    def __sub__(self, other: Interval) -> Interval:
        down, up = _contexts(self.bits)
        return Interval(down.sub(self.lo, other.hi), up.sub(self.hi, other.lo), self.bits)

    def __mul__(self, other: Interval) -> Interval:
        down, up = _contexts(self.bits)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0 and c >= 0:
            return Interval(down.mul(a, c), up.mul(b, d), self.bits)
        if b <= 0 and d <= 0:
            return Interval(down.mul(b, d), up.mul(a, c), self.bits)
        if a >= 0 and d <= 0:
            return Interval(down.mul(b, c), up.mul(a, d), self.bits)
        if b <= 0 and c >= 0:
            return Interval(down.mul(a, d), up.mul(b, c), self.bits)
        lo = min(down.mul(a, c), down.mul(a, d), down.mul(b, c), down.mul(b, d))
        hi = max(up.mul(a, c), up.mul(a, d), up.mul(b, c), up.mul(b, d))
        return Interval(lo, hi, self.bits)

    def scale(self, k: int) -> Interval:
        """Multiply by an exact integer, rounding the integer outward first."""
        if k == 0:
            zero = mpfr(0)
            return Interval(zero, zero, self.bits)
        return self * Interval.exact(k, self.bits)

    def reciprocal(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise InsufficientPrecision("division by an interval containing 0")
        down, up = _contexts(self.bits)
        return Interval(down.div(1, self.hi), up.div(1, self.lo), self.bits)

    def __truediv__(self, other: Interval) -> Interval:
        return self * other.reciprocal()

    def __pow__(self, n: int) -> Interval:
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            one = mpfr(1)
            return Interval(one, one, self.bits)
        down, up = _contexts(self.bits)
        a, b = self.lo, self.hi
        if a >= 0:
            return Interval(down.pow(a, n), up.pow(b, n), self.bits)
        if b <= 0:
            if n % 2 == 0:
                return Interval(down.pow(b, n), up.pow(a, n), self.bits)
            return Interval(down.pow(a, n), up.pow(b, n), self.bits)
        if n % 2 == 0:
            return Interval(mpfr(0), up.pow(max(up.abs(a), b), n), self.bits)
        return Interval(down.pow(a, n), up.pow(b, n), self.bits)

    def root(self, r: int) -> Interval:
        """Principal r-th root of a positive interval."""
        if r < 1:
            raise ValueError("root order must be positive")
        if self.lo <= 0:
            raise InsufficientPrecision("radicand not certified positive")
        down, up = _contexts(self.bits)
        return Interval(down.rootn(self.lo, r), up.rootn(self.hi, r), self.bits)

    def __repr__(self) -> str:
        return f"Interval([{self.lo}, {self.hi}], bits={self.bits})"
