"""
Unit tests for orthogonal polynomials and Gamma-function helpers
"""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from numerics.specfun import (
    binomial_general,
    factorial_ratio,
    hermite,
    laguerre,
    log_factorial_ratio,
    log_gamma,
)
from utils.error_handler import SpecialFunctionDomainError


class TestLaguerre:
    """Tests for the generalized Laguerre recurrence"""

    def test_low_degrees(self):
        """L_0 = 1, L_1^k = 1 + k - x, L_2 = 1 - 2x + x^2/2"""
        assert laguerre(0, 0.5, 3.0) == 1.0
        assert laguerre(1, 1.5, 2.0) == pytest.approx(0.5)
        assert laguerre(2, 0.0, 1.0) == pytest.approx(-0.5)

    @given(
        n=st.integers(min_value=0, max_value=15),
        k=st.floats(min_value=-0.5, max_value=6.0),
        x=st.floats(min_value=0.0, max_value=20.0),
    )
    def test_matches_scipy(self, n, k, x):
        """Recurrence agrees with scipy within the growth bound C(n+k, n) e^(x/2)"""
        expected = special.eval_genlaguerre(n, k, x)
        bound = special.binom(n + abs(k) + 1.0, n) * math.exp(x / 2.0)
        assert laguerre(n, k, x) == pytest.approx(expected, rel=1e-8, abs=1e-10 * max(1.0, bound))

    @given(
        n=st.integers(min_value=0, max_value=12),
        k=st.floats(min_value=-0.5, max_value=5.0),
        x=st.floats(min_value=0.0, max_value=8.0),
    )
    def test_matches_alternating_series(self, n, k, x):
        """L_n^k(x) = sum_m (-1)^m C(n+k, n-m) x^m / m!"""
        terms = [
            (-1) ** m * math.prod(n + k - i for i in range(n - m)) / math.factorial(n - m)
            * x ** m / math.factorial(m)
            for m in range(n + 1)
        ]
        magnitude = sum(abs(term) for term in terms)
        assert laguerre(n, k, x) == pytest.approx(sum(terms), rel=1e-9, abs=1e-11 * max(1.0, magnitude))

    def test_array_argument_keeps_shape(self):
        x = np.linspace(0.0, 4.0, 12).reshape(3, 4)
        values = laguerre(3, 0.5, x)
        assert values.shape == (3, 4)
        np.testing.assert_allclose(values, special.eval_genlaguerre(3, 0.5, x), rtol=1e-12, atol=1e-12)

    def test_scalar_argument_returns_float(self):
        assert isinstance(laguerre(4, 0.0, 1.0), float)

    def test_negative_degree_rejected(self):
        with pytest.raises(SpecialFunctionDomainError):
            laguerre(-1, 0.0, 1.0)

    def test_non_integer_degree_rejected(self):
        with pytest.raises(SpecialFunctionDomainError):
            laguerre(1.5, 0.0, 1.0)

    def test_order_at_most_minus_one_rejected(self):
        with pytest.raises(SpecialFunctionDomainError):
            laguerre(2, -1.0, 1.0)


class TestHermite:
    """Tests for the physicists' Hermite recurrence"""

    def test_cubic(self):
        """H_3(u) = 8u^3 - 12u"""
        u = 0.7
        assert hermite(3, u) == pytest.approx(8 * u ** 3 - 12 * u)

    @given(n=st.integers(min_value=0, max_value=20), u=st.floats(min_value=-4.0, max_value=4.0))
    def test_matches_scipy(self, n, u):
        expected = special.eval_hermite(n, u)
        scale = math.sqrt(2.0 ** n * math.factorial(n)) * math.exp(u * u / 2.0)
        assert hermite(n, u) == pytest.approx(expected, rel=1e-10, abs=1e-12 * scale)

    @pytest.mark.parametrize("n", range(9))
    def test_odd_degree_laguerre_link(self, n):
        """H_{2n+1}(u) = (-1)^n 2^(2n+1) n! u L_n^(1/2)(u^2)"""
        u = np.linspace(-3.0, 3.0, 25)
        lhs = hermite(2 * n + 1, u)
        rhs = (-1) ** n * 2.0 ** (2 * n + 1) * math.factorial(n) * u * laguerre(n, 0.5, u * u)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-12 * float(np.max(np.abs(lhs))))

    def test_parity(self):
        u = np.linspace(-2.0, 2.0, 9)
        np.testing.assert_allclose(hermite(5, -u), -hermite(5, u))
        np.testing.assert_allclose(hermite(6, -u), hermite(6, u))


class TestGammaHelpers:
    """Tests for log-space Gamma ratios and generalized binomials"""

    def test_log_gamma_half(self):
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi))

    def test_log_gamma_rejects_non_positive(self):
        with pytest.raises(SpecialFunctionDomainError):
            log_gamma(0.0)

    @given(x=st.floats(min_value=0.5, max_value=200.0))
    def test_log_gamma_functional_equation(self, x):
        """Gamma(x + 1) = x Gamma(x)"""
        shifted = log_gamma(x + 1.0)
        assert shifted == pytest.approx(log_gamma(x) + math.log(x), abs=1e-11 * max(1.0, abs(shifted)))

    @pytest.mark.parametrize("n", [0, 1, 5, 30])
    def test_factorial_ratio_unit_shift(self, n):
        """n! / Gamma(n + 1) = 1"""
        assert factorial_ratio(n, 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_factorial_ratio_half_shift(self):
        """0! / Gamma(1/2) = 1 / sqrt(pi)"""
        assert factorial_ratio(0, 0.5) == pytest.approx(1.0 / math.sqrt(math.pi))

    def test_log_factorial_ratio_large_n_stays_finite(self):
        assert math.isfinite(log_factorial_ratio(400, 3.5))

    def test_binomial_vanishes_for_small_integer_top(self):
        assert binomial_general(2, 3) == 0.0

    def test_binomial_half_integer_top(self):
        """C(1/2, 2) = (1/2)(-1/2)/2"""
        assert binomial_general(0.5, 2) == pytest.approx(-0.125)

    @given(a=st.floats(min_value=0.0, max_value=8.0), j=st.integers(min_value=0, max_value=8))
    def test_binomial_product_form(self, a, j):
        expected = math.prod(a - i for i in range(j)) / math.factorial(j)
        assert binomial_general(a, j) == pytest.approx(expected, rel=1e-10, abs=1e-10)
