"""Quadrature rules against closed forms and independent references."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bessel_lab.errors import NumericalError
from bessel_lab.quadrature import (
    QuadratureRule,
    gamma_fn,
    gauss_jacobi,
    gauss_legendre,
    integrate,
    kernel_beta_arrays,
    sine_power_rule,
    sine_weighted_rule,
)


class TestGaussLegendre:
    def test_two_point_rule(self):
        r = gauss_legendre(2)
        assert np.allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)])
        assert np.allclose(r.weights, [1.0, 1.0])

    def test_cubic_exact(self):
        r = gauss_legendre(2, 0.0, 1.0)
        assert integrate(r, lambda x: x**3) == pytest.approx(0.25, abs=1e-15)

    def test_sine_integral(self):
        r = gauss_legendre(20, 0.0, math.pi)
        assert abs(integrate(r, np.sin) - 2.0) < 1e-14

    @given(
        n=st.integers(min_value=1, max_value=20),
        d=st.integers(min_value=0, max_value=39),
    )
    @settings(max_examples=60, deadline=None)
    def test_monomial_exactness(self, n, d):
        """Degree up to 2n-1 is integrated exactly."""
        if d > 2 * n - 1:
            d = 2 * n - 1
        a, b = -0.5, 1.7
        r = gauss_legendre(n, a, b)
        exact = (b ** (d + 1) - a ** (d + 1)) / (d + 1)
        got = integrate(r, lambda x: x**d)
        assert got == pytest.approx(exact, rel=1e-12, abs=1e-13)

    def test_rejects_bad_interval(self):
        with pytest.raises(ValueError):
            gauss_legendre(4, 1.0, 1.0)
        with pytest.raises(ValueError):
            gauss_legendre(0)


class TestGamma:
    def test_against_math_gamma(self):
        zs = np.linspace(0.05, 30.0, 997)
        worst = max(abs(gamma_fn(z) - math.gamma(z)) / math.gamma(z) for z in zs)
        assert worst < 1e-13

    def test_reflection(self):
        assert gamma_fn(0.25) == pytest.approx(math.gamma(0.25), rel=1e-13)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            gamma_fn(0.0)


class TestGaussJacobi:
    def test_chebyshev_special_case(self):
        """alpha = beta = -1/2 is the Chebyshev rule: equal weights pi/n."""
        n = 7
        nodes, weights = gauss_jacobi(n, -0.5, -0.5)
        assert np.allclose(weights, math.pi / n)
        expected = np.cos((2 * np.arange(n, 0, -1) - 1) * math.pi / (2 * n))
        assert np.allclose(nodes, expected, atol=1e-13)

    def test_total_mass(self):
        # integral of (1-x)^a (1+x)^b over [-1,1]
        for a, b in ((-0.7, -0.7), (0.0, 1.0), (1.5, -0.3)):
            _, w = gauss_jacobi(12, a, b)
            exact = (
                2.0 ** (a + b + 1)
                * math.gamma(a + 1)
                * math.gamma(b + 1)
                / math.gamma(a + b + 2)
            )
            assert w.sum() == pytest.approx(exact, rel=1e-13)

    def test_rejects_bad_exponents(self):
        with pytest.raises(ValueError):
            gauss_jacobi(4, -1.0, 0.0)


class TestSineRules:
    def test_unit_integrand_lambda_one(self):
        r = sine_weighted_rule(16, 1.0)
        assert r.weights.sum() == pytest.approx(2.0, rel=1e-13)

    @pytest.mark.parametrize(
        "lam,expected",
        [(0.5, math.pi), (1.5, math.pi / 2.0)],
    )
    def test_half_integer_masses(self, lam, expected):
        r = sine_weighted_rule(32, lam)
        assert r.weights.sum() == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 1.5, 2.5])
    def test_mass_beta_identity(self, lam):
        """Total mass equals sqrt(pi) Gamma(lam) / Gamma(lam + 1/2)."""
        r = sine_weighted_rule(64, lam)
        exact = math.sqrt(math.pi) * math.gamma(lam) / math.gamma(lam + 0.5)
        assert abs(r.weights.sum() - exact) < 1e-10

    def test_odd_symmetry(self):
        for lam in (0.3, 1.2):
            r = sine_weighted_rule(48, lam)
            assert abs(integrate(r, np.cos)) < 1e-13

    @pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.5])
    def test_doubling_convergence(self, lam):
        """Doubling n gains at least 10x on a smooth integrand until the
        error hits the rounding floor."""
        g = lambda b: np.exp(np.cos(2.0 * b))
        ref = integrate(sine_weighted_rule(1024, lam), g)
        prev = abs(integrate(sine_weighted_rule(8, lam), g) - ref)
        n = 8
        while n <= 64:
            n *= 2
            cur = abs(integrate(sine_weighted_rule(n, lam), g) - ref)
            if prev < 1e-13 * abs(ref):
                break
            assert cur < prev / 10.0 or cur < 1e-13 * abs(ref)
            prev = cur

    def test_weights_positive(self):
        for lam in (0.05, 0.7, 3.0):
            r = sine_weighted_rule(40, lam)
            assert np.all(r.weights > 0)
            assert np.all(np.diff(r.nodes) > 0)

    def test_rejects_nonpositive_lambda(self):
        with pytest.raises(ValueError):
            sine_weighted_rule(8, 0.0)
        with pytest.raises(ValueError):
            sine_weighted_rule(8, -1.0)

    def test_sine_power_rule_even_weight(self):
        # integral of (sin b)^2 db = pi/2
        r = sine_power_rule(24, 2.0)
        assert r.weights.sum() == pytest.approx(math.pi / 2.0, rel=1e-12)


class TestGradedKernelRule:
    def test_matches_high_precision_reference(self):
        """Peaked integrand with a pole at distance 1e-6 beyond cos(beta)=1;
        reference value computed with 35-digit arithmetic."""
        lam, eps = 0.7, 1e-6
        cb, wb = kernel_beta_arrays(lam, eps)
        got = float(np.dot(wb, 1.0 / (1.0 + eps - cb) ** (lam + 1.0)))
        assert got == pytest.approx(1160362.03222042721, rel=5e-10)

    def test_smooth_case_matches_plain_rule(self):
        lam = 1.3
        cb, wb = kernel_beta_arrays(lam, 1.0)
        xd, wd = gauss_jacobi(96, lam - 1.0, lam - 1.0)
        f = lambda w: np.exp(w)
        assert np.dot(wb, f(cb)) == pytest.approx(np.dot(wd, f(xd)), rel=1e-13)

    def test_mass_preserved_when_graded(self):
        for lam in (0.3, 1.0, 2.0):
            cb, wb = kernel_beta_arrays(lam, 1e-10)
            exact = math.sqrt(math.pi) * math.gamma(lam) / math.gamma(lam + 0.5)
            assert wb.sum() == pytest.approx(exact, rel=5e-10)


class TestIntegrate:
    def test_zero_function(self):
        r = gauss_legendre(5, 0.0, 2.0)
        assert integrate(r, lambda x: 0.0 * x) == 0.0

    def test_constant(self):
        r = gauss_legendre(5, -1.0, 3.0)
        assert integrate(r, lambda x: 2.5 + 0.0 * x) == pytest.approx(10.0, rel=1e-14)

    def test_non_finite_rejected(self):
        r = gauss_legendre(5, 0.0, 1.0)
        with pytest.raises(NumericalError):
            integrate(r, lambda x: 1.0 / (x - x))


class TestQuadratureRuleValidation:
    def test_decreasing_nodes_rejected(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([1.0, 0.5]), np.array([1.0, 1.0]))

    def test_negative_weights_rejected(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([0.0, 1.0]), np.array([1.0, -1.0]))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([0.0, 1.0]), np.array([1.0]))
