"""Maximal operators on the weighted half-line.

Three operators: the radial maximal function (sup over t of the semigroup
extension along the vertical ray), the non-tangential maximal function
(sup over the cone |x - y| < t), and the weighted Hardy-Littlewood maximal
function (sup of interval averages).  All suprema are lattice maxima; every
profile records the sweep actually used, so results reproduce bit for bit.

The radial and non-tangential scans share per-t evaluation slices: the
apex value of each cone is the same float the radial scan sees, which makes
the pointwise order N >= R exact on shared lattices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .boundary import BoundaryFunction
from .errors import NumericalError
from .extension import poisson_values_base
from .geometry import Interval, lambda_value, measure_interval
from .quadrature import gauss_legendre

__all__ = [
    "MaximalProfile",
    "ConeSampling",
    "geometric_sweep",
    "default_sweep",
    "maximal_profiles",
    "radial_max",
    "nontangential_max",
    "hardy_littlewood_max",
    "l1_norm",
]


@dataclass
class MaximalProfile:
    """Per-node maximal values together with the sweep that produced them."""

    x_nodes: np.ndarray
    values: np.ndarray
    operator_tag: str  # radial | nontangential | hardy_littlewood
    truncation: tuple[float, float]
    argmax_t: np.ndarray
    argmax_y: np.ndarray
    amplitude: float = 1.0
    base_values: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.x_nodes = np.asarray(self.x_nodes, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.x_nodes.shape:
            raise ValueError("profile shape mismatch")
        if np.any(self.values < 0.0):
            raise ValueError("maximal values must be nonnegative")

    def to_csv(self, path: str | Path) -> None:
        from .reporting import write_csv

        write_csv(
            path,
            ["x", "value", "argmax_t", "argmax_y"],
            zip(self.x_nodes, self.values, self.argmax_t, self.argmax_y),
        )


@dataclass(frozen=True)
class ConeSampling:
    """Per-t discretization of the cone cross-section."""

    points_per_section: int = 17

    def __post_init__(self) -> None:
        if self.points_per_section < 9:
            raise ValueError("need at least 9 points per cone cross-section")


def geometric_sweep(t_min: float, t_max: float, ratio: float = 1.05) -> np.ndarray:
    """Geometric t-grid with spacing ratio <= 1.1."""
    if not (0.0 < t_min < t_max):
        raise ValueError("need 0 < t_min < t_max")
    if not (1.0 < ratio <= 1.1):
        raise ValueError("ratio must lie in (1, 1.1]")
    n = int(math.ceil(math.log(t_max / t_min) / math.log(ratio))) + 1
    return t_min * ratio ** np.arange(n)


def default_sweep(f: BoundaryFunction, x_nodes: np.ndarray, ratio: float = 1.05) -> np.ndarray:
    """Sweep from half the lattice spacing out far enough that the cone of
    any lattice point can reach the support."""
    x_nodes = np.asarray(x_nodes, dtype=float)
    h = float(np.min(np.diff(x_nodes))) if x_nodes.size > 1 else 0.1
    a, b = f.support()
    diam = b - a
    t_max = max(8.0 * diam, 1.5 * (float(x_nodes[-1]) + b))
    return geometric_sweep(0.5 * h, t_max, ratio)


def maximal_profiles(
    f: BoundaryFunction,
    x_nodes: np.ndarray,
    lam: float,
    *,
    t_sweep: np.ndarray | None = None,
    cone: ConeSampling = ConeSampling(),
    n_y: int = 96,
    n_beta: int = 96,
    include_nontangential: bool = True,
) -> dict[str, MaximalProfile]:
    """Radial and non-tangential profiles from shared per-t slices."""
    lv = lambda_value(lam)
    x_nodes = np.asarray(x_nodes, dtype=float)
    if np.any(x_nodes <= 0.0) or np.any(np.diff(x_nodes) <= 0.0):
        raise ValueError("x_nodes must be positive and increasing")
    if t_sweep is None:
        t_sweep = default_sweep(f, x_nodes)
    t_sweep = np.asarray(t_sweep, dtype=float)
    ratios = t_sweep[1:] / t_sweep[:-1]
    if t_sweep.size > 1 and np.max(ratios) > 1.1 + 1e-12:
        raise ValueError("t-sweep spacing ratio exceeds 1.1")

    nx = x_nodes.size
    npts = cone.points_per_section
    rad_best = np.zeros(nx)
    rad_arg = np.zeros(nx)
    nt_best = np.zeros(nx)
    nt_arg_t = np.zeros(nx)
    nt_arg_y = np.zeros(nx)

    for t in t_sweep:
        if include_nontangential:
            lo = np.maximum(x_nodes - t, 0.0)
            hi = x_nodes + t
            frac = np.linspace(0.0, 1.0, npts)
            cone_pts = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
            y_all = np.unique(np.concatenate([x_nodes, cone_pts.ravel()]))
        else:
            y_all = x_nodes
        vals = np.abs(
            poisson_values_base(
                f, np.full(y_all.shape, t), y_all, lv, n_y=n_y, n_beta=n_beta
            )
        )
        ix = np.searchsorted(y_all, x_nodes)
        ray = vals[ix]
        upd = ray > rad_best
        rad_best[upd] = ray[upd]
        rad_arg[upd] = t
        if include_nontangential:
            icone = np.searchsorted(y_all, cone_pts)
            cone_vals = vals[icone]
            best_j = np.argmax(cone_vals, axis=1)
            cand = cone_vals[np.arange(nx), best_j]
            cand_y = cone_pts[np.arange(nx), best_j]
            # the apex ray point participates in the cone sup
            apex_better = ray >= cand
            cand = np.where(apex_better, ray, cand)
            cand_y = np.where(apex_better, x_nodes, cand_y)
            upd = cand > nt_best
            nt_best[upd] = cand[upd]
            nt_arg_t[upd] = t
            nt_arg_y[upd] = cand_y[upd]

    amp = abs(f.amplitude)
    trunc = (float(t_sweep[0]), float(t_sweep[-1]))
    out = {
        "radial": MaximalProfile(
            x_nodes,
            amp * rad_best,
            "radial",
            trunc,
            rad_arg,
            x_nodes.copy(),
            amplitude=amp,
            base_values=rad_best,
        )
    }
    if include_nontangential:
        if np.any(nt_best < rad_best):
            raise NumericalError("cone sup fell below its own apex values")
        out["nontangential"] = MaximalProfile(
            x_nodes,
            amp * nt_best,
            "nontangential",
            trunc,
            nt_arg_t,
            nt_arg_y,
            amplitude=amp,
            base_values=nt_best,
        )
    return out


def radial_max(
    f: BoundaryFunction,
    x_nodes: np.ndarray,
    t_sweep: np.ndarray | None,
    lam: float,
    **kw,
) -> MaximalProfile:
    """sup over the t-sweep of |P_t f(x)| per lattice node."""
    return maximal_profiles(
        f, x_nodes, lam, t_sweep=t_sweep, include_nontangential=False, **kw
    )["radial"]


def nontangential_max(
    f: BoundaryFunction,
    x_nodes: np.ndarray,
    cone_sampling: ConeSampling,
    lam: float,
    *,
    t_sweep: np.ndarray | None = None,
    **kw,
) -> MaximalProfile:
    """sup of |P_t f(y)| over the discretized cone |x - y| < t."""
    return maximal_profiles(
        f, x_nodes, lam, t_sweep=t_sweep, cone=cone_sampling, **kw
    )["nontangential"]


def _interval_average_base(
    g: BoundaryFunction, interval: Interval, lam: float, n_gl: int = 8
) -> float:
    """(1/m(I)) * integral_I |g| dm with unit amplitude."""
    lo, hi = interval.lo, interval.hi
    cuts = [lo] + [c for a, b in g.pieces() for c in (a, b) if lo < c < hi] + [hi]
    cuts = sorted(set(cuts))
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        rule = gauss_legendre(n_gl, a, b)
        vals = np.abs(g.base_values(rule.nodes)) * rule.nodes ** (2.0 * lam)
        total += float(np.dot(rule.weights, vals))
    return total / measure_interval(interval, lam)


def hardy_littlewood_max(
    g: BoundaryFunction,
    x_nodes: np.ndarray,
    t_grid: np.ndarray | None,
    lam: float,
) -> MaximalProfile:
    """Weighted maximal averages over the intervals I(x, t), t in the grid.

    The sup runs over intervals centered at the evaluation point (the
    uncentered variants only change constants); the grid used is recorded.
    """
    lv = lambda_value(lam)
    x_nodes = np.asarray(x_nodes, dtype=float)
    if t_grid is None:
        a, b = g.support()
        h = float(np.min(np.diff(x_nodes))) if x_nodes.size > 1 else 0.1
        t_grid = geometric_sweep(0.25 * h, 4.0 * (float(x_nodes[-1]) + b))
    t_grid = np.asarray(t_grid, dtype=float)
    best = np.zeros(x_nodes.size)
    arg = np.zeros(x_nodes.size)
    for i, x in enumerate(x_nodes):
        for t in t_grid:
            avg = _interval_average_base(g, Interval(float(x), float(t)), lv)
            if avg > best[i]:
                best[i] = avg
                arg[i] = t
    amp = abs(g.amplitude)
    return MaximalProfile(
        x_nodes,
        amp * best,
        "hardy_littlewood",
        (float(t_grid[0]), float(t_grid[-1])),
        arg,
        x_nodes.copy(),
        amplitude=amp,
        base_values=best,
    )


def _l1_base(
    x: np.ndarray, values: np.ndarray, lam: float, domain: tuple[float, float] | None
) -> float:
    """Integral of the |piecewise-linear interpolant| against x^(2 lam)."""
    lo = x[0] if domain is None else max(domain[0], x[0])
    hi = x[-1] if domain is None else min(domain[1], x[-1])
    total = 0.0
    for a, b in zip(x[:-1], x[1:]):
        pa, pb = max(a, lo), min(b, hi)
        if pb <= pa:
            continue
        rule = gauss_legendre(8, pa, pb)
        vals = np.abs(np.interp(rule.nodes, x, values)) * rule.nodes ** (2.0 * lam)
        total += float(np.dot(rule.weights, vals))
    return total


def l1_norm(
    obj: "MaximalProfile | BoundaryFunction",
    lam: float,
    domain: tuple[float, float] | None = None,
) -> float:
    """Weighted L1 norm on the node lattice (profiles interpolate linearly)."""
    lv = lambda_value(lam)
    if isinstance(obj, MaximalProfile):
        base = obj.base_values if obj.base_values is not None else obj.values
        return obj.amplitude * _l1_base(obj.x_nodes, base, lv, domain)
    if isinstance(obj, BoundaryFunction):
        total = 0.0
        for a, b in obj.pieces():
            if domain is not None:
                a, b = max(a, domain[0]), min(b, domain[1])
                if b <= a:
                    continue
            rule = gauss_legendre(32, a, b)
            vals = np.abs(obj.base_values(rule.nodes)) * rule.nodes ** (2.0 * lv)
            total += float(np.dot(rule.weights, vals))
        return abs(obj.amplitude) * total
    raise TypeError(f"cannot take the norm of {type(obj)!r}")


def l1_tail_fraction(profile: MaximalProfile, lam: float) -> float:
    """Share of the norm carried by the outermost lattice panel; a crude
    unresolved-tail indicator recorded in reports."""
    lv = lambda_value(lam)
    total = l1_norm(profile, lv)
    if total == 0.0:
        return 0.0
    x = profile.x_nodes
    edge = l1_norm(profile, lv, domain=(float(x[-2]), float(x[-1])))
    return edge / total
