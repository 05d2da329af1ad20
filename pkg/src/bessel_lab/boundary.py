"""Boundary data on the half-line for the Poisson extension machinery.

A BoundaryFunction is either an analytic rule on a finite domain or a
sampled table with linear interpolation; both vanish outside their domain.
The amplitude is kept as a separate factor so that scaling a function is
structurally exact: every downstream operator applies the amplitude as a
final multiplication, which makes homogeneity hold bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "BoundaryFunction",
    "indicator",
    "tent",
    "gaussian_bump",
    "constant",
    "sum_boundary",
    "standard_family",
]


@dataclass(frozen=True)
class BoundaryFunction:
    """Function on (0, infinity), zero outside ``domain``.

    kind:      "analytic" or "sampled"
    domain:    (a, b) support bounds, 0 <= a < b
    rule:      vectorized callable for the analytic kind (unit amplitude)
    samples:   (x, v) arrays for the sampled kind; linear interpolation
    breakpoints: interior points where smoothness fails; quadrature panels
               never straddle them
    amplitude: scalar multiplier applied after evaluation
    p_integrability_hint: optional exponent for which |f|^p dm is known finite
    """

    kind: str
    domain: tuple[float, float]
    rule: Callable[[np.ndarray], np.ndarray] | None = None
    samples: tuple[np.ndarray, np.ndarray] | None = None
    breakpoints: tuple[float, ...] = ()
    amplitude: float = 1.0
    label: str = "f"
    p_integrability_hint: float | None = None

    def __post_init__(self) -> None:
        a, b = self.domain
        if not (0.0 <= a < b):
            raise ValueError(f"invalid domain {self.domain}")
        if self.kind == "analytic":
            if self.rule is None:
                raise ValueError("analytic kind needs a rule")
        elif self.kind == "sampled":
            if self.samples is None:
                raise ValueError("sampled kind needs samples")
            x, v = self.samples
            x = np.asarray(x, dtype=float)
            v = np.asarray(v, dtype=float)
            if x.ndim != 1 or x.shape != v.shape:
                raise ValueError("sample arrays must be 1-D of equal length")
            if np.any(np.diff(x) <= 0.0):
                raise ValueError("sample grid must be strictly increasing")
            if not np.all(np.isfinite(v)):
                raise ValueError("sample values must be finite")
            object.__setattr__(self, "samples", (x, v))
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    # -- evaluation ---------------------------------------------------------

    def base_values(self, x: np.ndarray) -> np.ndarray:
        """Values before the amplitude factor."""
        x = np.asarray(x, dtype=float)
        a, b = self.domain
        inside = (x >= a) & (x <= b)
        if self.kind == "analytic":
            out = np.zeros_like(x)
            if np.any(inside):
                out[inside] = np.asarray(self.rule(x[inside]), dtype=float)
            return out
        xs, vs = self.samples
        out = np.interp(x, xs, vs, left=0.0, right=0.0)
        return np.where(inside, out, 0.0)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.amplitude * self.base_values(x)

    # -- structure ----------------------------------------------------------

    def pieces(self) -> list[tuple[float, float]]:
        """Panels on which the function is smooth."""
        a, b = self.domain
        if self.kind == "sampled":
            xs = self.samples[0]
            pts = [a] + [float(t) for t in xs if a < t < b] + [b]
        else:
            pts = [a] + sorted(t for t in self.breakpoints if a < t < b) + [b]
        return [(lo, hi) for lo, hi in zip(pts[:-1], pts[1:]) if hi > lo]

    def support(self) -> tuple[float, float]:
        return self.domain

    def scaled(self, c: float) -> "BoundaryFunction":
        return BoundaryFunction(
            kind=self.kind,
            domain=self.domain,
            rule=self.rule,
            samples=self.samples,
            breakpoints=self.breakpoints,
            amplitude=self.amplitude * float(c),
            label=self.label,
            p_integrability_hint=self.p_integrability_hint,
        )


def indicator(a: float, b: float, label: str | None = None) -> BoundaryFunction:
    return BoundaryFunction(
        kind="analytic",
        domain=(float(a), float(b)),
        rule=lambda x: np.ones_like(x),
        label=label or f"indicator({a},{b})",
    )


def tent(a: float, b: float, label: str | None = None) -> BoundaryFunction:
    """Piecewise-linear bump rising to 1 at the midpoint of (a, b)."""
    a, b = float(a), float(b)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    def rule(x: np.ndarray) -> np.ndarray:
        return np.maximum(0.0, 1.0 - np.abs(x - mid) / half)

    return BoundaryFunction(
        kind="analytic",
        domain=(a, b),
        rule=rule,
        breakpoints=(mid,),
        label=label or f"tent({a},{b})",
    )


def gaussian_bump(
    center: float, sigma: float, n_sigma: float = 3.0, label: str | None = None
) -> BoundaryFunction:
    """Gaussian truncated at center +- n_sigma*sigma, shifted to vanish there."""
    c, s = float(center), float(sigma)
    a = max(c - n_sigma * s, 0.0)
    b = c + n_sigma * s
    edge = math.exp(-0.5 * n_sigma**2)

    def rule(x: np.ndarray) -> np.ndarray:
        return np.exp(-0.5 * ((x - c) / s) ** 2) - edge

    return BoundaryFunction(
        kind="analytic",
        domain=(a, b),
        rule=rule,
        label=label or f"bump({c},{s})",
    )


def constant(
    value: float,
    domain: tuple[float, float],
    n_breaks: int = 0,
    label: str | None = None,
) -> BoundaryFunction:
    """Constant on a domain; optional geometric breakpoints help quadrature
    on very wide domains."""
    a, b = float(domain[0]), float(domain[1])
    breaks: tuple[float, ...] = ()
    if n_breaks > 0 and a > 0.0:
        breaks = tuple(np.geomspace(a, b, n_breaks + 2)[1:-1])
    return BoundaryFunction(
        kind="analytic",
        domain=(a, b),
        rule=lambda x: np.ones_like(x),
        breakpoints=breaks,
        amplitude=float(value),
        label=label or f"const({value})",
    )


def sum_boundary(f: BoundaryFunction, g: BoundaryFunction) -> BoundaryFunction:
    """Pointwise sum as a new analytic BoundaryFunction."""
    a = min(f.domain[0], g.domain[0])
    b = max(f.domain[1], g.domain[1])
    breaks = sorted(
        set(f.domain)
        | set(g.domain)
        | set(f.breakpoints)
        | set(g.breakpoints)
        | set(f.samples[0] if f.kind == "sampled" else ())
        | set(g.samples[0] if g.kind == "sampled" else ())
    )

    def rule(x: np.ndarray) -> np.ndarray:
        return f(x) + g(x)

    return BoundaryFunction(
        kind="analytic",
        domain=(a, b),
        rule=rule,
        breakpoints=tuple(t for t in breaks if a < t < b),
        label=f"{f.label}+{g.label}",
    )


def from_profile(x: np.ndarray, values: np.ndarray, label: str = "profile") -> BoundaryFunction:
    """Sampled function from a profile lattice (linear interpolation)."""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    return BoundaryFunction(
        kind="sampled",
        domain=(float(x[0]), float(x[-1])),
        samples=(x, values),
        label=label,
    )


def standard_family() -> dict[str, BoundaryFunction]:
    """The four test functions exercised by every verification suite:
    two generic bumps, one with a kink, and one close to the axis."""
    return {
        "indicator": indicator(1.0, 2.0),
        "tent": tent(1.0, 3.0),
        "bump": gaussian_bump(2.0, 0.3),
        "near_axis": indicator(0.1, 0.4, label="indicator(0.1,0.4)"),
    }
