import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vsmooth.exact.polynomial import ExactPolynomial, binomial, binomial_row, one_minus_t_cubed

coeff_lists = st.lists(st.integers(-50, 50), min_size=0, max_size=8)
polys = coeff_lists.map(lambda c: ExactPolynomial(tuple(c)))


@given(n=st.integers(0, 60))
def test_binomial_row_matches_math_comb(n):
    assert binomial_row(n) == [math.comb(n, k) for k in range(n + 1)]


@pytest.mark.parametrize("n,k", [(5, -1), (5, 6), (0, 1), (-1, 0)])
def test_binomial_out_of_range_is_zero(n, k):
    assert binomial(n, k) == 0


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ExactPolynomial(())


@given(polys, polys, st.fractions(min_value=-3, max_value=3, max_denominator=7))
def test_evaluation_is_a_homomorphism(p, q, t):
    assert (p * q)(t) == p(t) * q(t)
    assert (p + q)(t) == p(t) + q(t)


def test_trim_and_degree():
    p = ExactPolynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert p[5] == 0


def test_one_minus_t_cubed():
    c = one_minus_t_cubed()
    assert c.coeffs == (1, -3, 3, -1)
    assert c(Fraction(1)) == 0


def test_from_terms_and_signs():
    p = ExactPolynomial.from_terms({0: 3, 4: -2, 7: 1})
    assert p.degree == 7
    assert p.nonzero_terms() == {0: 3, 4: -2, 7: 1}
    assert p.sign_changes() == 2


def test_homogeneous_value():
    p = ExactPolynomial((1, -3, 3, -1))
    # (L - t)^3 at L=2, t=1
    assert p.homogeneous_value(2, 1, 3) == 1
