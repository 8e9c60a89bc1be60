import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vsmooth.empirical import ordering_on_grid
from vsmooth.functions import (
    DomainError,
    FunctionModel,
    Kind,
    make_arcsinh_sqrt,
    make_counterexample,
    make_log1p,
    make_root,
)
from vsmooth.smoothing import (
    ShiftedBound,
    build_cubic,
    build_cubic_root,
    build_odd_extension,
    check_tdelta,
    eval_g,
    eval_g_d1,
    eval_g_d2,
    eval_h,
    lambda_hat,
    lambda_hat_root,
    linear_extrapolation,
    shifted_bound,
)

HALF = Fraction(1, 2)


def solve_matching_system(f, delta):
    """Independent oracle: the 3x3 linear system for (A, B, C)."""
    m = np.array([[delta**3, delta**2, delta], [3 * delta**2, 2 * delta, 1.0], [6 * delta, 2.0, 0.0]])
    rhs = np.array([f.eval(delta), f.deriv1(delta), f.deriv2(delta)])
    return np.linalg.solve(m, rhs)


def bisect_decreasing(fn, y, lo, hi, iters=400):
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if fn(mid) > y else (lo, mid)
    return 0.5 * (lo + hi)


def linear_model():
    one = lambda w: np.ones_like(np.asarray(w, dtype=float)) * 1.0
    zero = lambda w: np.zeros_like(np.asarray(w, dtype=float)) * 1.0
    return FunctionModel(Kind.LINEAR_COMBINATION, "identity", lambda w: w, one, zero)


class TestBuildCubic:
    def test_root_half_against_linear_solve(self):
        s = build_cubic(make_root(HALF), 1.0)
        assert (s.A, s.B, s.C) == (0.375, -1.25, 1.875)
        np.testing.assert_allclose(solve_matching_system(make_root(HALF), 1.0), [0.375, -1.25, 1.875], rtol=1e-14)

    def test_identity_reproduced(self):
        s = build_cubic(linear_model(), 3.7)
        assert (s.A, s.B, s.C) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)

    def test_log1p(self):
        s = build_cubic(make_log1p(), 1.0)
        ln2 = math.log(2)
        expected = (ln2 - 5 / 8, 7 / 4 - 3 * ln2, 3 * ln2 - 9 / 8)
        assert (s.A, s.B, s.C) == pytest.approx(expected, rel=1e-14)
        assert (s.A, s.B, s.C) == pytest.approx((0.068147, -0.329442, 0.954442), abs=5e-7)
        assert s.A + s.B + s.C == pytest.approx(ln2, rel=1e-15)

    @pytest.mark.parametrize("f", [make_log1p(), make_arcsinh_sqrt(), make_root(0.3)], ids=lambda m: m.label)
    @pytest.mark.parametrize("delta", [1e-3, 0.1, 1.0, 10.0, 1e3])
    def test_general_against_linear_solve(self, f, delta):
        s = build_cubic(f, delta)
        np.testing.assert_allclose([s.A, s.B, s.C], solve_matching_system(f, delta), rtol=1e-8)

    @pytest.mark.parametrize("delta", [0.0, -1.0, float("nan"), float("inf")])
    def test_bad_delta(self, delta):
        with pytest.raises(DomainError):
            build_cubic(make_log1p(), delta)

    def test_counterexample_needs_smooth_delta(self):
        f = make_counterexample(0.1, 0.01)
        with pytest.raises(DomainError):
            build_cubic(f, 1.05)
        with pytest.raises(DomainError):
            build_cubic(f, 1.1)
        build_cubic(f, 1.11)

    def test_third_derivative_constant(self):
        s = build_cubic(make_arcsinh_sqrt(), 0.7)
        w = np.linspace(0, 0.69, 50)
        d3 = np.diff(s.cubic_d2(w)) / np.diff(w)
        np.testing.assert_allclose(d3, s.third_derivative, rtol=1e-9)


class TestBuildCubicRoot:
    def test_examples(self):
        assert build_cubic_root(HALF, 1.0).A == 0.375
        s = build_cubic_root(HALF, 1.0)
        assert (s.A, s.B, s.C) == (0.375, -1.25, 1.875)
        s4 = build_cubic_root(HALF, 4.0)
        assert (s4.A, s4.B, s4.C) == pytest.approx((0.01171875, -0.15625, 0.9375), rel=1e-15)
        assert s.eval(1.0) == 1.0

    @given(p=st.floats(0.01, 0.99), log_delta=st.floats(-4, 4))
    def test_agrees_with_general(self, p, log_delta):
        delta = 10.0**log_delta
        a = build_cubic_root(p, delta)
        b = build_cubic(make_root(p), delta)
        for x, y in ((a.A, b.A), (a.B, b.B), (a.C, b.C)):
            assert x == pytest.approx(y, rel=1e-12)

    @given(p=st.floats(0.05, 0.95), s=st.floats(0.01, 100), t=st.floats(0.0, 1.0))
    def test_scale_covariance(self, p, s, t):
        delta = 1.3
        w = t * delta
        lhs = build_cubic_root(p, s * delta).eval(s * w)
        rhs = s**p * build_cubic_root(p, delta).eval(w)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


class TestEvalG:
    def test_examples(self):
        s = build_cubic_root(HALF, 1.0)
        assert eval_g(s, 0.0) == 0.0
        assert eval_g(s, 4.0) == 2.0
        assert eval_g(s, 0.5) == 0.671875
        assert eval_g(s, 0.5) < math.sqrt(0.5)

    def test_branches_meet(self):
        s = build_cubic(make_arcsinh_sqrt(), 2.0)
        assert s.cubic(2.0) == pytest.approx(s.tail.eval(2.0), rel=1e-12)
        assert eval_g(s, 2.0) == s.tail.eval(2.0)

    def test_derivative_siblings(self):
        s = build_cubic_root(HALF, 1.0)
        assert eval_g_d1(s, 0.0) == s.C
        assert eval_g_d2(s, 0.0) == 2 * s.B
        assert eval_g_d1(s, 4.0) == 0.25

    def test_negative_w(self):
        with pytest.raises(DomainError):
            eval_g(build_cubic_root(HALF, 1.0), -0.1)

    def test_vectorized(self):
        s = build_cubic_root(HALF, 1.0)
        w = np.array([0.0, 0.5, 1.0, 4.0])
        np.testing.assert_array_equal(s.eval(w), [0.0, 0.671875, 1.0, 2.0])


class TestTDelta:
    @pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("delta", [0.1, 1.0, 10.0])
    def test_roots_satisfy(self, p, delta):
        res = check_tdelta(make_root(p), delta)
        assert res.satisfied
        # margin = delta^(p-2) * (p-1)(p-2)
        assert res.margin == pytest.approx(delta ** (p - 2) * (p - 1) * (p - 2), rel=1e-12)

    def test_counterexample_fails(self):
        res = check_tdelta(make_counterexample(0.1, 0.01), 1.11)
        assert not res.satisfied
        assert res.margin == pytest.approx(-6.7, abs=0.1)

    @pytest.mark.parametrize("delta", [0.01, 0.1, 1.0, 10.0])
    def test_log1p(self, delta):
        assert check_tdelta(make_log1p(), delta).satisfied

    @pytest.mark.parametrize("delta", [0.01, 0.1, 1.0, 10.0])
    def test_arcsinh_sqrt(self, delta):
        assert check_tdelta(make_arcsinh_sqrt(), delta).satisfied

    def test_log1p_numerator_formula(self):
        # the margin times delta^2 (1+delta)^2 is 2(1+d)^2 log(1+d) - 3d^2 - 2d
        for d in (0.5, 2.0, 7.0):
            k = 2 * (1 + d) ** 2 * math.log1p(d) - 3 * d * d - 2 * d
            assert check_tdelta(make_log1p(), d).margin == pytest.approx(k / (d * d * (1 + d) ** 2), rel=1e-10)

    def test_counterexample_shape(self):
        s = build_cubic(make_counterexample(0.1, 0.01), 1.11)
        w = np.linspace(1e-6, 0.1, 1001)[:-1]
        bad = (s.deriv1(w) < 0) & (s.deriv2(w) > 0)
        assert bad.any()


class TestLambdaHat:
    def test_root_half(self):
        s = build_cubic_root(HALF, 1.0)
        lam = lambda_hat(s.tail, s)
        assert lam == pytest.approx(16 / 225, rel=1e-14)
        assert s.tail.deriv1(16 / 225) == pytest.approx(1.875, rel=1e-14)
        assert lambda_hat_root(HALF, 4.0) == pytest.approx(64 / 225, rel=1e-14)

    def test_root_third_against_bisection(self):
        f = make_root(Fraction(1, 3))
        s = build_cubic(f, 1.0)
        expected = (40 / 6) ** -1.5
        assert lambda_hat(f, s) == pytest.approx(expected, rel=1e-13)
        assert lambda_hat_root(Fraction(1, 3), 1.0) == pytest.approx(expected, rel=1e-13)
        assert bisect_decreasing(f.deriv1, s.C, 1e-9, 1.0) == pytest.approx(expected, rel=1e-10)

    @given(p=st.floats(0.02, 0.98), log_delta=st.floats(-4, 4))
    def test_closed_form_matches_general(self, p, log_delta):
        delta = 10.0**log_delta
        s = build_cubic_root(p, delta)
        assert lambda_hat_root(p, delta) == pytest.approx(lambda_hat(s.tail, s), rel=1e-12)

    def test_bisection_path_matches_inverse(self):
        # strip the closed-form inverse to force bisection
        f = make_root(0.4)
        bare = FunctionModel(f.kind, f.label, f.eval, f.deriv1, f.deriv2)
        s = build_cubic(f, 2.5)
        assert lambda_hat(bare, s) == pytest.approx(lambda_hat(f, s), rel=1e-12)

    def test_missing_range(self):
        f = make_counterexample(0.1, 0.01)
        s = build_cubic(f, 1.11)
        with pytest.raises(DomainError):
            lambda_hat(f, s)


class TestShiftedBound:
    def test_values(self):
        b = ShiftedBound(16 / 225, make_root(HALF))
        assert eval_h(b, 0.0) == 0.0
        assert eval_h(b, 1.0) == pytest.approx((math.sqrt(241) - 4) / 15, rel=1e-14)
        assert eval_h(b, 1.0) == pytest.approx(0.768278, abs=5e-7)

    @pytest.mark.parametrize("f", [make_root(0.3), make_log1p(), make_arcsinh_sqrt()], ids=lambda m: m.label)
    def test_below_f(self, f):
        b = ShiftedBound(0.05, f)
        w = np.linspace(0, 10, 2001)
        assert np.all(b.eval(w) <= f.eval(w))

    def test_slope_matches_g(self):
        f = make_arcsinh_sqrt()
        s = build_cubic(f, 0.3)
        b = shifted_bound(f, s)
        assert b.deriv1(0.0) == pytest.approx(s.C, rel=1e-12)


class TestOddExtension:
    def test_examples(self):
        g = build_odd_extension(HALF, 1.0)
        assert g.eval(-1.0) == -1.0
        assert g.eval(-0.5) == -0.671875
        assert g.deriv1(0.0) == 1.875
        assert g.base.cubic_d1(0.0) == 1.875
        assert g.left_cubic(-0.5) == -0.671875

    @given(w=st.floats(-50, 50))
    def test_exact_oddness(self, w):
        g = build_odd_extension(Fraction(1, 3), 0.8)
        assert g.eval(-w) == -g.eval(w)

    def test_one_sided_slopes_at_zero(self):
        g = build_odd_extension(HALF, 1.0)
        h = 1e-7
        right = (g.eval(h) - g.eval(0.0)) / h
        left = (g.eval(0.0) - g.eval(-h)) / h
        assert right == pytest.approx(1.875, rel=1e-6)
        assert left == pytest.approx(1.875, rel=1e-6)

    def test_shape(self):
        g = build_odd_extension(0.4, 0.5)
        w = np.linspace(-2, 2, 4001)
        assert np.all(g.deriv1(w) > 0)
        neg, pos = w < 0, w > 0
        assert np.all(g.deriv2(w[neg]) >= 0)
        assert np.all(g.deriv2(w[pos]) <= 0)
        assert math.isnan(g.deriv2(0.0))

    def test_second_derivative_continuous_at_delta(self):
        g = build_odd_extension(0.4, 0.5)
        for d in (0.5, -0.5):
            left = g.deriv2(np.nextafter(d, -np.inf))
            right = g.deriv2(np.nextafter(d, np.inf))
            assert left == pytest.approx(right, rel=1e-9)

    def test_bounds_f(self):
        g = build_odd_extension(Fraction(1, 3), 1.0)
        w = np.linspace(-2, 2, 4001)
        f = np.sign(w) * np.abs(w) ** (1 / 3)
        assert np.all(g.eval(w[w > 0]) <= f[w > 0] + 1e-15)
        assert np.all(g.eval(w[w < 0]) >= f[w < 0] - 1e-15)


class TestIncreasingConcaveOnGrid:
    @pytest.mark.parametrize(
        "f,delta",
        [(make_root(0.5), 0.1), (make_root(0.05), 3.0), (make_log1p(), 0.5), (make_arcsinh_sqrt(), 2.0)],
        ids=["root0.5", "root0.05", "log1p", "arcsinh"],
    )
    def test_increasing_concave(self, f, delta):
        assert check_tdelta(f, delta).satisfied
        s = build_cubic(f, delta)
        w = np.linspace(0, 2 * delta, 10001)
        assert np.all(s.deriv1(w) > 0)
        assert np.all(s.deriv2(w) <= 0)


def test_linear_extrapolation():
    f = make_root(HALF)
    assert linear_extrapolation(f, 0.1, 0.0) == pytest.approx(math.sqrt(0.1) - 0.1 / (2 * math.sqrt(0.1)), rel=1e-15)
    assert linear_extrapolation(f, 0.1, 0.0) == pytest.approx(0.158114, abs=5e-7)
    assert linear_extrapolation(f, 0.1, 0.1) == f.eval(0.1)
    assert linear_extrapolation(f, 0.1, 4.0) == 2.0


@pytest.mark.parametrize("q", [2, 3, 7])
def test_ordering_small_sweep(q):
    r = ordering_on_grid(Fraction(1, q), 1.0, 2001)
    assert r.holds()
    assert r.slope_mismatch < 1e-12
