"""Real algebraic numbers as expression DAGs over the rationals.

Values are built from exact rationals with ``+ - * /``, integer powers and
principal r-th roots of positive radicands.  Rational subexpressions are
folded exactly; everything else is evaluated lazily to certified intervals
(:class:`~vsmooth.exact.interval.Interval`) at a requested precision.
Sub-results are memoized per node and per precision, so values that share
subtrees (the K_v coefficients all share Q and beta) are evaluated once.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import gmpy2

from vsmooth.exact.interval import InsufficientPrecision, Interval

Scalar = int | Fraction


def _as_value(x) -> AlgebraicValue:
    if isinstance(x, AlgebraicValue):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Const(Fraction(x))
    raise TypeError(f"cannot lift {type(x).__name__} to an exact value")


def _exact_root(x: Fraction, r: int) -> Fraction | None:
    if x < 0:
        return None
    n, nexact = gmpy2.iroot(gmpy2.mpz(x.numerator), r)
    d, dexact = gmpy2.iroot(gmpy2.mpz(x.denominator), r)
    if nexact and dexact:
        return Fraction(int(n), int(d))
    return None


class AlgebraicValue:
    """Base node.  Subclasses implement ``_evaluate(bits)``."""

    __slots__ = ("_cache",)

    def __init__(self):
        self._cache: dict[int, Interval] = {}

    # -- evaluation -------------------------------------------------------
    def interval(self, bits: int) -> Interval:
        """Certified enclosure at ``bits`` of working precision.

        Enclosures computed at lower precision are intersected in, so raising
        the precision never widens the result.
        """
        hit = self._cache.get(bits)
        if hit is not None:
            return hit
        iv = self._evaluate(bits)
        coarser = [b for b in self._cache if b < bits]
        if coarser:
            iv = iv.intersect(self._cache[max(coarser)])
            iv = Interval(iv.lo, iv.hi, bits)
        self._cache[bits] = iv
        return iv

    def _evaluate(self, bits: int) -> Interval:
        raise NotImplementedError

    def is_exact(self) -> bool:
        return False

    def is_zero(self) -> bool:
        """True only when the value simplified to the exact rational 0."""
        return False

    def __float__(self) -> float:
        return float(self.interval(64).mid)

    def sign(self, start_bits: int = 128, max_bits: int = 16384) -> tuple[int | None, int]:
        """Certified sign and the precision at which it was resolved.

        Returns ``(None, max_bits)`` if the enclosure still contains 0 at the
        cap.  Zero is returned only for exactly-simplified zeros.
        """
        if self.is_exact():
            v = self.value
            return (0 if v == 0 else (1 if v > 0 else -1)), 0
        bits = start_bits
        while True:
            try:
                s = self.interval(bits).sign()
            except InsufficientPrecision:
                s = None
            if s is not None:
                return s, bits
            if bits >= max_bits:
                return None, bits
            bits = min(2 * bits, max_bits)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return lincomb([(1, self), (1, _as_value(other))])

    __radd__ = __add__

    def __sub__(self, other):
        return lincomb([(1, self), (-1, _as_value(other))])

    def __rsub__(self, other):
        return lincomb([(1, _as_value(other)), (-1, self)])

    def __neg__(self):
        return lincomb([(-1, self)])

    def __mul__(self, other):
        other = _as_value(other)
        if other.is_exact():
            return lincomb([(other.value, self)])
        if self.is_exact():
            return lincomb([(self.value, other)])
        return Product((self, other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_value(other)
        if other.is_exact():
            if other.value == 0:
                raise ZeroDivisionError("exact division by zero")
            return lincomb([(1 / other.value, self)])
        return Quotient(self, other)

    def __rtruediv__(self, other):
        return _as_value(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n == 0:
            return Const(Fraction(1))
        if n == 1:
            return self
        return Power(self, n)

    def root(self, r: int) -> AlgebraicValue:
        return root(self, r)


class Const(AlgebraicValue):
    __slots__ = ("value",)

    def __init__(self, value: Scalar):
        super().__init__()
        self.value = Fraction(value)

    def is_exact(self) -> bool:
        return True

    def is_zero(self) -> bool:
        return self.value == 0

    def _evaluate(self, bits: int) -> Interval:
        return Interval.exact(self.value, bits)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        return Const(self.value**n)

    def __repr__(self) -> str:
        return f"Const({self.value})"


class LinComb(AlgebraicValue):
    """sum_k c_k * x_k + constant, with exact rational c_k."""

    __slots__ = ("terms", "constant")

    def __init__(self, terms: tuple[tuple[Fraction, AlgebraicValue], ...], constant: Fraction):
        super().__init__()
        self.terms = terms
        self.constant = constant

    def _evaluate(self, bits: int) -> Interval:
        acc = Interval.exact(self.constant, bits)
        for c, x in self.terms:
            xi = x.interval(bits)
            if c == 1:
                acc = acc + xi
            elif c == -1:
                acc = acc - xi
            elif c.denominator == 1:
                acc = acc + xi.scale(c.numerator)
            else:
                acc = acc + xi * Interval.exact(c, bits)
        return acc

    def __repr__(self) -> str:
        return f"LinComb({len(self.terms)} terms, const={self.constant})"


def lincomb(pairs, constant: Scalar = 0) -> AlgebraicValue:
    """Exact linear combination; flattens nested sums and folds constants."""
    const = Fraction(constant)
    merged: dict[int, list] = {}
    order: list[int] = []

    def add(c: Fraction, x: AlgebraicValue):
        nonlocal const
        if c == 0:
            return
        if x.is_exact():
            const += c * x.value
            return
        if isinstance(x, LinComb):
            const += c * x.constant
            for c2, x2 in x.terms:
                add(c * c2, x2)
            return
        key = id(x)
        if key in merged:
            merged[key][0] += c
        else:
            merged[key] = [c, x]
            order.append(key)

    for c, x in pairs:
        add(Fraction(c), _as_value(x))
    terms = tuple((merged[k][0], merged[k][1]) for k in order if merged[k][0] != 0)
    if not terms:
        return Const(const)
    if len(terms) == 1 and const == 0 and terms[0][0] == 1:
        return terms[0][1]
    return LinComb(terms, const)


class Product(AlgebraicValue):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple[AlgebraicValue, ...]):
        super().__init__()
        self.factors = factors

    def _evaluate(self, bits: int) -> Interval:
        acc = self.factors[0].interval(bits)
        for f in self.factors[1:]:
            acc = acc * f.interval(bits)
        return acc


class Quotient(AlgebraicValue):
    __slots__ = ("num", "den")

    def __init__(self, num: AlgebraicValue, den: AlgebraicValue):
        super().__init__()
        self.num = num
        self.den = den

    def _evaluate(self, bits: int) -> Interval:
        return self.num.interval(bits) / self.den.interval(bits)


class Power(AlgebraicValue):
    __slots__ = ("base", "n")

    def __init__(self, base: AlgebraicValue, n: int):
        super().__init__()
        self.base = base
        self.n = n

    def _evaluate(self, bits: int) -> Interval:
        return self.base.interval(bits) ** self.n


class Root(AlgebraicValue):
    """Principal r-th root of a positive value."""

    __slots__ = ("radicand", "r")

    def __init__(self, radicand: AlgebraicValue, r: int):
        super().__init__()
        self.radicand = radicand
        self.r = r

    def _evaluate(self, bits: int) -> Interval:
        return self.radicand.interval(bits).root(self.r)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return super().__pow__(n)
        # (x^(1/r))^n = x^k * (x^(1/r))^m with n = k*r + m
        k, m = divmod(n, self.r)
        head = self.radicand**k
        if m == 0:
            return head
        tail = self if m == 1 else Power(self, m)
        return head * tail

    def __repr__(self) -> str:
        return f"Root({self.radicand!r}, {self.r})"


def root(x, r: int) -> AlgebraicValue:
    """Principal r-th root; exact when ``x`` is a rational perfect power."""
    x = _as_value(x)
    if r < 1:
        raise ValueError("root order must be positive")
    if r == 1:
        return x
    if x.is_exact():
        if x.value <= 0:
            if x.value == 0:
                return Const(0)
            raise ValueError("radicand must be positive")
        exact = _exact_root(x.value, r)
        if exact is not None:
            return Const(exact)
    return Root(x, r)


def raw_power(x: AlgebraicValue, n: int) -> AlgebraicValue:
    """x**n without any algebraic rewriting (evaluated by interval powering)."""
    return Power(_as_value(x), n)
