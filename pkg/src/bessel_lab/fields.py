"""Analytic test fields with closed-form derivatives.

The polynomial fields solve the Bessel Laplace equation exactly (for the
given lambda) and are defined on the whole (t, x) plane, which makes them
usable both as stencil-exactness probes and as boundary data with negative
time arguments in the polar machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "AnalyticField",
    "constant_field",
    "linear_t",
    "harmonic_quadratic",
    "harmonic_cubic",
    "harmonic_quartic",
    "blob",
]


@dataclass(frozen=True)
class AnalyticField:
    """Scalar field with gradient and second derivatives supplied in
    closed form; all callables are vectorized over numpy arrays."""

    name: str
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    grad: Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]
    hess: Callable[
        [np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]
    ]  # (f_tt, f_tx, f_xx)

    def __call__(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        return self.fn(t, x)


def constant_field(c: float = 1.0) -> AnalyticField:
    return AnalyticField(
        name=f"const({c})",
        fn=lambda t, x: np.full_like(np.asarray(t, dtype=float), c),
        grad=lambda t, x: (np.zeros_like(t), np.zeros_like(t)),
        hess=lambda t, x: (np.zeros_like(t), np.zeros_like(t), np.zeros_like(t)),
    )


def linear_t() -> AnalyticField:
    return AnalyticField(
        name="t",
        fn=lambda t, x: np.asarray(t, dtype=float) + 0.0 * x,
        grad=lambda t, x: (np.ones_like(t), np.zeros_like(t)),
        hess=lambda t, x: (np.zeros_like(t), np.zeros_like(t), np.zeros_like(t)),
    )


def harmonic_quadratic(lam: float) -> AnalyticField:
    """(1 + 2 lam) t^2 - x^2, exactly Bessel-harmonic."""
    c = 1.0 + 2.0 * lam
    return AnalyticField(
        name="quadratic",
        fn=lambda t, x: c * t**2 - x**2,
        grad=lambda t, x: (2.0 * c * t, -2.0 * x),
        hess=lambda t, x: (
            2.0 * c * np.ones_like(t),
            np.zeros_like(t),
            -2.0 * np.ones_like(t),
        ),
    )


def harmonic_cubic(lam: float) -> AnalyticField:
    """t^3 - 3 t x^2 / (1 + 2 lam), exactly Bessel-harmonic."""
    c = 3.0 / (1.0 + 2.0 * lam)
    return AnalyticField(
        name="cubic",
        fn=lambda t, x: t**3 - c * t * x**2,
        grad=lambda t, x: (3.0 * t**2 - c * x**2, -2.0 * c * t * x),
        hess=lambda t, x: (6.0 * t, -2.0 * c * x, -2.0 * c * t),
    )


def harmonic_quartic(lam: float) -> AnalyticField:
    """t^4 + a t^2 x^2 + b x^4 with a, b chosen to solve the equation;
    has nonzero fourth derivatives, so finite differences see O(h^2)."""
    a = -6.0 / (1.0 + 2.0 * lam)
    b = 3.0 / ((1.0 + 2.0 * lam) * (3.0 + 2.0 * lam))
    return AnalyticField(
        name="quartic",
        fn=lambda t, x: t**4 + a * t**2 * x**2 + b * x**4,
        grad=lambda t, x: (
            4.0 * t**3 + 2.0 * a * t * x**2,
            2.0 * a * t**2 * x + 4.0 * b * x**3,
        ),
        hess=lambda t, x: (
            12.0 * t**2 + 2.0 * a * x**2,
            4.0 * a * t * x,
            2.0 * a * t**2 + 12.0 * b * x**2,
        ),
    )


def blob(t0: float, x0: float, sigma: float) -> AnalyticField:
    """Gaussian blob; not harmonic, used by the embedding verifier."""

    def fn(t, x):
        return np.exp(-((t - t0) ** 2 + (x - x0) ** 2) / (2.0 * sigma**2))

    def grad(t, x):
        g = fn(t, x)
        return (-(t - t0) / sigma**2 * g, -(x - x0) / sigma**2 * g)

    def hess(t, x):
        g = fn(t, x)
        gt = (t - t0) / sigma**2
        gx = (x - x0) / sigma**2
        return (
            (gt**2 - 1.0 / sigma**2) * g,
            gt * gx * g,
            (gx**2 - 1.0 / sigma**2) * g,
        )

    return AnalyticField(name=f"blob({t0},{x0},{sigma})", fn=fn, grad=grad, hess=hess)
