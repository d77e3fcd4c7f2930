"""
Unit tests for the polynomial-times-Gaussian carrier

Tests coefficient table algebra, closed-form operator application and the
realification guard.
"""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import polynomial as npoly

from numerics.polygauss import (
    BiPoly,
    GaussianAnsatz,
    OperatorPoly,
    apply_operator,
    differentiate_p,
    eval_ansatz,
    hermite_operator,
    laguerre_operator,
    multiply_q,
    poly_add,
    poly_mul,
    poly_scale,
    realify,
)
from numerics.specfun import hermite, laguerre
from utils.error_handler import NumericResidueError


class TestCoeffTable:
    """Tests for BiPoly and OperatorPoly coefficient tables"""

    def test_trailing_zeros_trimmed(self):
        poly = BiPoly(np.array([[2.0, 0.0], [0.0, 0.0]]))
        assert poly.coeffs.shape == (1, 1)
        assert poly.terms() == {(0, 0): 2.0}

    def test_zero_table(self):
        poly = BiPoly.constant(0.0)
        assert poly.is_zero
        assert poly.total_degree == 0

    def test_coefficients_are_read_only(self):
        poly = BiPoly.monomial(1, 2, 3.0)
        with pytest.raises(ValueError):
            poly.coeffs[1, 2] = 0.0

    def test_product_difference_of_squares(self):
        """(q + p)(q - p) = q^2 - p^2"""
        plus = BiPoly.from_terms({(1, 0): 1.0, (0, 1): 1.0})
        minus = BiPoly.from_terms({(1, 0): 1.0, (0, 1): -1.0})
        assert (plus * minus).terms() == {(2, 0): 1.0, (0, 2): -1.0}

    def test_power(self):
        q = BiPoly.monomial(1, 0)
        assert (q ** 3).terms() == {(3, 0): 1.0}
        assert (q ** 0).terms() == {(0, 0): 1.0}

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            BiPoly.monomial(1, 0) ** -1

    def test_add_and_subtract(self):
        f = BiPoly.from_terms({(0, 0): 1.0, (2, 1): 2.0})
        g = BiPoly.from_terms({(1, 0): 5.0})
        assert (f + g - g).allclose(f)
        assert (f - f).is_zero

    def test_scalar_multiplication_commutes(self):
        f = BiPoly.from_terms({(1, 1): 1.5})
        assert (2.0 * f).allclose(f * 2.0)

    def test_multiply_q(self):
        f = BiPoly.from_terms({(0, 1): 1.0})
        assert multiply_q(f, 2).terms() == {(2, 1): 1.0}

    @given(
        st.lists(st.floats(-2.0, 2.0), min_size=3, max_size=3),
        st.lists(st.floats(-2.0, 2.0), min_size=3, max_size=3),
        st.floats(-1.5, 1.5),
        st.floats(-1.5, 1.5),
    )
    def test_poly_mul_evaluates_to_pointwise_product(self, a, b, q, p):
        f = BiPoly.from_terms({(0, 0): a[0], (1, 0): a[1], (1, 1): a[2]})
        g = BiPoly.from_terms({(0, 0): b[0], (0, 2): b[1], (2, 0): b[2]})
        product = npoly.polyval2d(q, p, poly_mul(f, g).coeffs)
        expected = npoly.polyval2d(q, p, f.coeffs) * npoly.polyval2d(q, p, g.coeffs)
        assert product == pytest.approx(expected, abs=1e-12)

    def test_poly_add_and_scale(self):
        f = BiPoly.from_terms({(1, 0): 1.0, (0, 3): 2.0})
        g = BiPoly.from_terms({(1, 0): -1.0})
        assert poly_add(f, g).terms() == {(0, 3): 2.0}
        assert poly_scale(f, 1j).terms() == {(1, 0): 1j, (0, 3): 2j}

    def test_total_degree(self):
        assert BiPoly.from_terms({(3, 1): 1.0, (0, 2): 1.0}).total_degree == 4

    def test_operator_linear(self):
        op = OperatorPoly.linear(2.0, 1j, constant=1.0)
        assert op.terms() == {(0, 0): 1.0, (1, 0): 2.0, (0, 1): 1j}


class TestGaussianAnsatz:
    """Tests for closed-form differentiation and operator application"""

    def test_rejects_non_positive_momentum_rate(self):
        with pytest.raises(ValueError):
            GaussianAnsatz.gaussian(a=1.0, c=0.0)

    def test_rejects_negative_position_rate(self):
        with pytest.raises(ValueError):
            GaussianAnsatz.gaussian(a=-1.0, c=1.0)

    def test_addition_requires_matching_envelopes(self):
        with pytest.raises(ValueError):
            GaussianAnsatz.gaussian(1.0, 1.0) + GaussianAnsatz.gaussian(1.0, 2.0)

    def test_differentiate_gaussian(self):
        """d/dp exp(-c p^2) = -2 c p exp(-c p^2)"""
        derivative = differentiate_p(GaussianAnsatz.gaussian(a=0.0, c=0.75))
        assert derivative.poly.terms() == {(0, 1): -1.5}

    def test_apply_pure_derivative_matches_differentiate(self):
        seed = GaussianAnsatz(BiPoly.from_terms({(1, 2): 1.0, (0, 0): 3.0}), a=0.5, c=0.5)
        result = apply_operator(OperatorPoly.monomial(0, 1), seed)
        assert result.poly.allclose(differentiate_p(seed).poly)

    def test_second_derivative_values(self):
        """d^2/dp^2 exp(-c p^2) = (4 c^2 p^2 - 2c) exp(-c p^2)"""
        c = 0.3
        result = apply_operator(OperatorPoly.monomial(0, 2), GaussianAnsatz.gaussian(a=0.0, c=c))
        p = np.linspace(-3.0, 3.0, 13)
        expected = (4 * c * c * p * p - 2 * c) * np.exp(-c * p * p)
        np.testing.assert_allclose(np.real(eval_ansatz(result, 0.0, p)), expected, atol=1e-14)

    def test_position_symbol_multiplies(self):
        result = apply_operator(OperatorPoly.monomial(2, 0, 3.0), GaussianAnsatz.gaussian(a=1.0, c=1.0))
        assert result.poly.terms() == {(2, 0): 3.0}

    def test_eval_broadcasts(self):
        f = GaussianAnsatz(BiPoly.from_terms({(1, 1): 1.0}), a=0.5, c=0.5)
        values = eval_ansatz(f, np.linspace(-1.0, 1.0, 5)[np.newaxis, :], np.linspace(-1.0, 1.0, 3)[:, np.newaxis])
        assert values.shape == (3, 5)

    def test_eval_scalar_at_origin(self):
        f = GaussianAnsatz.gaussian(a=0.5, c=0.5)
        assert eval_ansatz(f, 0.0, 0.0) == 1.0

    def test_derivative_matches_central_differences(self):
        f = GaussianAnsatz(BiPoly.from_terms({(0, 0): 1.0, (1, 1): -0.7, (2, 3): 0.25}), a=0.4, c=0.6)
        q, p = np.meshgrid(np.linspace(-1.5, 1.5, 5), np.linspace(-1.5, 1.5, 5))
        step = 1e-4
        finite = (eval_ansatz(f, q, p + step) - eval_ansatz(f, q, p - step)) / (2.0 * step)
        np.testing.assert_allclose(eval_ansatz(differentiate_p(f), q, p), finite, atol=1e-7)

    @given(x=st.floats(min_value=-3.0, max_value=3.0), y=st.floats(min_value=-3.0, max_value=3.0))
    def test_apply_operator_is_linear(self, x, y):
        f = GaussianAnsatz(BiPoly.from_terms({(0, 0): 1.0, (1, 2): 0.5}), a=0.5, c=0.5)
        g = GaussianAnsatz(BiPoly.from_terms({(2, 0): -1.0, (0, 1): 2.0}), a=0.5, c=0.5)
        operator = laguerre_operator(2, 1.5, 0.5, -1)
        combined = apply_operator(operator, f.scaled(x) + g.scaled(y))
        separate = apply_operator(operator, f).scaled(x) + apply_operator(operator, g).scaled(y)
        assert combined.poly.allclose(separate.poly, atol=1e-9)


class TestOperatorBuilders:
    """Tests for Laguerre and Hermite operator polynomials"""

    @given(
        n=st.integers(min_value=0, max_value=8),
        k=st.sampled_from([-0.5, 0.5, 1.5, 2.5]),
        q=st.floats(min_value=-2.5, max_value=2.5),
    )
    def test_laguerre_operator_position_column(self, n, k, q):
        """With no derivatives the operator is L_n^k(scale q^2)"""
        scale = 0.75
        column = np.real(laguerre_operator(n, k, scale, 1).coeffs[:, 0])
        expected = laguerre(n, k, scale * q * q)
        assert npoly.polyval(q, column) == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_laguerre_operator_sign_conjugates(self):
        plus = laguerre_operator(3, 0.5, 0.5, 1)
        minus = laguerre_operator(3, 0.5, 0.5, -1)
        np.testing.assert_allclose(plus.coeffs, np.conj(minus.coeffs))

    def test_laguerre_operator_rejects_bad_sign(self):
        with pytest.raises(ValueError):
            laguerre_operator(2, 0.5, 1.0, 0)

    @pytest.mark.parametrize("n", [0, 1, 4, 7])
    def test_hermite_operator_position_column(self, n):
        """H_n(s q + 0 d) has the Hermite coefficients in s q"""
        s = 0.8
        column = np.real(hermite_operator(n, s, 0.0).coeffs[:, 0])
        for q in (-1.3, 0.0, 0.4, 2.0):
            assert npoly.polyval(q, column) == pytest.approx(hermite(n, s * q), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("sign", [1, -1])
    @pytest.mark.parametrize("n", range(5))
    def test_laguerre_operator_commutes_with_radial_symbol(self, n, sign):
        """(q^2 + d^2/dp^2) and L_n^k(s (q +- i d)^2) commute when applied to an ansatz"""
        radial = OperatorPoly.from_terms({(2, 0): 1.0, (0, 2): 1.0})
        laguerre_op = laguerre_operator(n, 1.5, 0.5, sign)
        seed = GaussianAnsatz(BiPoly.from_terms({(0, 0): 1.0, (1, 1): 0.3, (0, 2): -0.2}), a=0.5, c=0.5)

        left = apply_operator(radial, apply_operator(laguerre_op, seed))
        right = apply_operator(laguerre_op, apply_operator(radial, seed))
        scale = float(np.max(np.abs(left.poly.coeffs)))
        assert left.poly.max_abs_deviation(right.poly) <= 1e-12 * scale

    @pytest.mark.parametrize("n", range(6))
    def test_laguerre_operator_raises_degree_by_at_most_2n(self, n):
        seed = GaussianAnsatz(BiPoly.from_terms({(0, 0): 1.0, (1, 2): 0.5}), a=0.5, c=0.5)
        for sign in (1, -1):
            result = apply_operator(laguerre_operator(n, 0.5, 0.5, sign), seed)
            assert result.poly.total_degree <= seed.poly.total_degree + 2 * n

    def test_hermite_operator_degree(self):
        assert hermite_operator(5, 1.0, 1j).total_degree == 5


class TestRealify:
    """Tests for the imaginary residue guard"""

    def test_records_small_residue(self):
        f = GaussianAnsatz(BiPoly.from_terms({(0, 0): 2.0 + 1e-12j}), a=0.5, c=0.5)
        real = realify(f, tol=1e-9)
        assert real.imag_residue == pytest.approx(5e-13, rel=1e-6)
        assert not np.any(real.poly.coeffs.imag)

    def test_rejects_large_residue(self):
        f = GaussianAnsatz(BiPoly.from_terms({(0, 0): 1.0 + 1.0j}), a=0.5, c=0.5)
        with pytest.raises(NumericResidueError) as exc_info:
            realify(f, tol=1e-9)
        assert exc_info.value.residue == pytest.approx(1.0 / math.sqrt(2.0))
        assert exc_info.value.details()['error_code'] == 'NUMERIC_RESIDUE'

    def test_zero_polynomial(self):
        real = realify(GaussianAnsatz(BiPoly.constant(0.0), a=0.0, c=1.0))
        assert real.imag_residue == 0.0
        assert real.poly.is_zero

    def test_envelope_preserved(self):
        real = realify(GaussianAnsatz(BiPoly.constant(1.0), a=0.25, c=math.pi))
        assert (real.a, real.c) == (0.25, math.pi)
