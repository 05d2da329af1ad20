"""Weighted measures of intervals and quadrant-clipped balls."""

import math

import numpy as np
import pytest

from bessel_lab.geometry import (
    Interval,
    LambdaParam,
    QuarterBall,
    comparable_measures_check,
    lambda_value,
    measure_ball,
    measure_interval,
)
from bessel_lab.quadrature import gauss_jacobi, gauss_legendre, integrate
from bessel_lab.reporting import XorShift64Star


class TestInterval:
    def test_lebesgue_case(self):
        assert measure_interval(Interval(3.0, 1.0), 0.0) == pytest.approx(2.0)

    def test_cubic_weight_clipped(self):
        # interval (0, 2) with weight x^2
        assert measure_interval(Interval(1.0, 1.0), 1.0) == pytest.approx(8.0 / 3.0)

    def test_cubic_weight_interior(self):
        assert measure_interval(Interval(2.0, 1.0), 1.0) == pytest.approx(26.0 / 3.0)

    def test_monotone_in_radius(self):
        vals = [measure_interval(Interval(2.0, t), 0.7) for t in (0.5, 1.0, 2.0, 4.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_agrees_with_quadrature(self, rng):
        """Closed form against quadrature on 100 random triples; clipped
        intervals get the weight's endpoint behavior built into the rule."""
        for _ in range(100):
            x = rng.uniform(0.1, 5.0)
            t = rng.uniform(0.05, 4.0)
            lam = rng.uniform(0.0, 3.0)
            iv = Interval(x, t)
            if iv.lo == 0.0:
                nodes, weights = gauss_jacobi(64, 0.0, 2.0 * lam)
                scale = (iv.hi / 2.0) ** (2.0 * lam + 1.0)
                ref = float(weights.sum()) * scale
            else:
                rule = gauss_legendre(64, iv.lo, iv.hi)
                ref = integrate(rule, lambda y: y ** (2 * lam))
            got = measure_interval(iv, lam)
            assert got == pytest.approx(ref, rel=1e-12)

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            Interval(0.0, 1.0)
        with pytest.raises(ValueError):
            Interval(1.0, 0.0)


class TestLambdaParam:
    def test_strict_positive(self):
        with pytest.raises(ValueError):
            LambdaParam(0.0)
        assert LambdaParam(0.5).value == 0.5

    def test_coercion(self):
        assert lambda_value(LambdaParam(1.5)) == 1.5
        assert lambda_value(0.0) == 0.0
        with pytest.raises(ValueError):
            lambda_value(-0.1)


class TestBallMeasure:
    def test_interior_unweighted_area(self):
        assert measure_ball(QuarterBall(5.0, 5.0, 1.0), 0.0) == pytest.approx(
            math.pi, rel=1e-10
        )

    def test_interior_quadratic_weight(self):
        # closed form pi R^2 (x0^2 + R^2/4)
        got = measure_ball(QuarterBall(1.0, 5.0, 0.5), 1.0)
        assert got == pytest.approx(math.pi * 0.25 * (25.0 + 0.0625), rel=1e-10)

    def test_quarter_disk(self):
        got = measure_ball(QuarterBall(0.0, 0.0, 1.0), 1.0)
        assert got == pytest.approx(math.pi / 16.0, rel=1e-10)

    @pytest.mark.parametrize("x0", [0.2, 0.5, 0.9])
    def test_axis_clip_matches_segment_formula(self, x0):
        """lam = 0 with only the x = 0 clip: area is the disk minus the
        circular segment beyond the chord at distance x0."""
        R = 1.0
        seg = R * R * math.acos(x0 / R) - x0 * math.sqrt(R * R - x0 * x0)
        expected = math.pi * R * R - seg
        got = measure_ball(QuarterBall(5.0, x0, R), 0.0)
        assert got == pytest.approx(expected, rel=1e-10)

    def test_both_clips_against_midpoint_oracle(self):
        """Ball cut by both axes, checked against a dense indicator sum."""
        ball = QuarterBall(0.3, 0.4, 1.0)
        lam = 0.8
        n = 2400
        t = (np.arange(n) + 0.5) * (1.4 / n)
        x = (np.arange(n) + 0.5) * (1.5 / n)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        inside = ball.contains(tt, xx)
        ref = float(np.sum(inside * xx ** (2 * lam)) * (1.4 / n) * (1.5 / n))
        got = measure_ball(ball, lam)
        assert got == pytest.approx(ref, rel=2e-3)

    def test_degenerate_radius(self):
        assert measure_ball(QuarterBall(1.0, 1.0, 0.0), 1.0) == 0.0

    def test_doubling_bounded(self):
        """Measure growth under doubling stays below the homogeneity bound
        times a fixed constant across a random sweep."""
        rng = XorShift64Star(99)
        for _ in range(40):
            lam = rng.uniform(0.0, 2.5)
            ball = QuarterBall(
                rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0), rng.uniform(0.05, 1.0)
            )
            ratio = measure_ball(ball.scaled(2.0), lam, 1e-9) / measure_ball(
                ball, lam, 1e-9
            )
            assert ratio <= 2.0 ** (2.0 * lam + 2.0) * 1.5

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            measure_ball(QuarterBall(1.0, 1.0, 0.5), 1.0, tol=0.0)


class TestComparableMeasures:
    def test_unweighted_interior_exact(self):
        """Interior doubled ball at lam = 0: ratio is exactly pi (2R)^2/R^2/4."""
        rep = comparable_measures_check(QuarterBall(3.0, 8.0, 1.0), 0.0)
        assert rep["regime"] == "interior"
        assert rep["ratio"] == pytest.approx(4.0 * math.pi, rel=1e-8)

    def test_weighted_interior_band(self):
        rep = comparable_measures_check(QuarterBall(1.0, 8.0, 1.0), 1.0)
        assert rep["regime"] == "interior"
        assert math.pi / 2.0 < rep["ratio"] < 8.0 * math.pi

    def test_near_axis_finite(self):
        rep = comparable_measures_check(QuarterBall(1.0, 0.1, 1.0), 1.0)
        assert rep["regime"] == "near_axis"
        assert 0.0 < rep["ratio"] < math.inf

    def test_band_stable_under_sweep(self):
        rng = XorShift64Star(7)
        ratios = []
        for _ in range(20):
            ball = QuarterBall(rng.uniform(1, 3), rng.uniform(4, 9), rng.uniform(0.2, 0.8))
            rep = comparable_measures_check(ball, 1.0)
            ratios.append(rep["ratio"])
        assert max(ratios) / min(ratios) < 10.0
