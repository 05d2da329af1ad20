"""Regions of the quarter-plane and their weighted measures.

Two measures normalize everything in this package: on the half-line,
dm(x) = x^(2*lam) dx; on the quarter-plane, the product dt x^(2*lam) dx.
Intervals and balls are always realized intersected with the open quadrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureConvergenceError
from .quadrature import gauss_legendre

__all__ = [
    "LambdaParam",
    "Interval",
    "QuarterBall",
    "lambda_value",
    "measure_interval",
    "measure_ball",
    "comparable_measures_check",
]


@dataclass(frozen=True)
class LambdaParam:
    """Weight parameter of the Bessel operator; strictly positive."""

    value: float

    def __post_init__(self) -> None:
        if not self.value > 0.0:
            raise ValueError(f"lambda must be positive, got {self.value}")


def lambda_value(lam: "LambdaParam | float") -> float:
    """Coerce a LambdaParam or bare nonnegative float to a float.

    The measure formulas remain valid at lam = 0 (plain Lebesgue case), so
    bare floats down to 0 are accepted here even though LambdaParam itself
    is strict.
    """
    if isinstance(lam, LambdaParam):
        return lam.value
    v = float(lam)
    if v < 0.0:
        raise ValueError(f"lambda must be nonnegative, got {v}")
    return v


@dataclass(frozen=True)
class Interval:
    """Interval (x - t, x + t) clipped to the positive half-line."""

    x: float
    t: float

    def __post_init__(self) -> None:
        if not (self.x > 0.0 and self.t > 0.0):
            raise ValueError(f"need x > 0 and t > 0, got x={self.x}, t={self.t}")

    @property
    def lo(self) -> float:
        return max(self.x - self.t, 0.0)

    @property
    def hi(self) -> float:
        return self.x + self.t


@dataclass(frozen=True)
class QuarterBall:
    """Disk of radius R about (t0, x0), realized inside the open quadrant."""

    t0: float
    x0: float
    radius: float

    def __post_init__(self) -> None:
        if self.t0 < 0.0 or self.x0 < 0.0:
            raise ValueError("center coordinates must be nonnegative")
        if self.radius < 0.0:
            raise ValueError("radius must be nonnegative")

    def scaled(self, factor: float) -> "QuarterBall":
        return QuarterBall(self.t0, self.x0, self.radius * factor)

    def contains(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        return (t - self.t0) ** 2 + (x - self.x0) ** 2 < self.radius**2


def measure_interval(interval: Interval, lam: "LambdaParam | float") -> float:
    """Weighted length of an interval: closed-form antiderivative of x^(2*lam)."""
    lv = lambda_value(lam)
    e = 2.0 * lv + 1.0
    return (interval.hi**e - interval.lo**e) / e


def _weighted_strip(ball: QuarterBall, lam: float, phi: np.ndarray) -> np.ndarray:
    """Integrand of the ball measure after t = t0 + R sin(phi).

    Integrating x^(2*lam) across each vertical strip of the clipped disk is
    exact, leaving a 1-D integral in t; the sine substitution removes the
    square-root behavior at the top and bottom of the disk.
    """
    R = ball.radius
    s = R * np.cos(phi)  # half-width of the strip in x
    e = 2.0 * lam + 1.0
    hi = ball.x0 + s
    lo = np.maximum(ball.x0 - s, 0.0)
    return (hi**e - np.maximum(lo, 0.0) ** e) / e * R * np.cos(phi)


def measure_ball(
    ball: QuarterBall, lam: "LambdaParam | float", tol: float = 1e-8
) -> float:
    """Weighted area of a quadrant-clipped disk to relative accuracy tol.

    Piecewise Gauss-Legendre in the substituted angle, split at the clip
    transitions, with node doubling until two successive refinements agree.
    """
    lv = lambda_value(lam)
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    R = ball.radius
    if R == 0.0:
        return 0.0
    t_lo = max(ball.t0 - R, 0.0)
    phi_lo = math.asin(min(max((t_lo - ball.t0) / R, -1.0), 1.0))
    phi_hi = 0.5 * math.pi

    cuts = {phi_lo, phi_hi}
    if ball.x0 < R:
        phi_c = math.acos(ball.x0 / R)
        for c in (-phi_c, phi_c):
            if phi_lo < c < phi_hi:
                cuts.add(c)
    edges = sorted(cuts)

    def value_at(n: int) -> float:
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            rule = gauss_legendre(n, a, b)
            total += float(np.dot(rule.weights, _weighted_strip(ball, lv, rule.nodes)))
        return total

    n = 16
    prev = value_at(n)
    while n <= (1 << 13):
        n *= 2
        cur = value_at(n)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise QuadratureConvergenceError(
        f"ball measure stalled before tol={tol} for {ball}"
    )


def comparable_measures_check(
    ball: QuarterBall, lam: "LambdaParam | float", tol: float = 1e-8
) -> dict:
    """Ratio of the enlarged-ball measure to its scale-invariant prediction.

    Away from the axis (R <= x0/4) the doubled ball is compared against
    x0^(2*lam) * R^2; near the axis the 12-fold ball is compared against
    R^(2*lam+2).  Sweeps assert the ratio stays in a fixed band.
    """
    lv = lambda_value(lam)
    R = ball.radius
    if R <= ball.x0 / 4.0:
        regime = "interior"
        m = measure_ball(ball.scaled(2.0), lv, tol)
        ratio = m / (ball.x0 ** (2.0 * lv) * R**2)
    else:
        regime = "near_axis"
        m = measure_ball(ball.scaled(12.0), lv, tol)
        ratio = m / R ** (2.0 * lv + 2.0)
    return {
        "regime": regime,
        "ratio": ratio,
        "measure": m,
        "t0": ball.t0,
        "x0": ball.x0,
        "radius": R,
        "lambda": lv,
    }
