"""Empirical verifiers for the interior estimates and maximal bounds.

Each verifier computes both sides of one inequality on explicit lattices
and reports the ratio; none of them asserts a literature constant.  The
contract everywhere is boundedness plus stability under refinement, with
every lattice recorded so runs reproduce exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .boundary import BoundaryFunction, from_profile
from .errors import NumericalError
from .extension import HarmonicGrid
from .fields import AnalyticField
from .geometry import QuarterBall, lambda_value, measure_ball
from .maximal import (
    MaximalProfile,
    hardy_littlewood_max,
    l1_norm,
    maximal_profiles,
)
from .quadrature import gauss_jacobi, gauss_legendre, sine_power_rule

__all__ = [
    "VerificationReport",
    "PolarProfile",
    "ball_lattice_max",
    "ball_lattice_integral",
    "verify_moser",
    "verify_caccioppoli",
    "verify_sobolev",
    "verify_l2_moser",
    "iteration_constant",
    "iteration_demo",
    "polar_quantities",
    "polar_case_check",
    "verify_domination",
    "verify_norm_equivalence",
]


@dataclass
class VerificationReport:
    """One inequality instance: both sides, their ratio, and context."""

    suite: str
    params: dict
    lhs: float
    rhs: float
    ratio: float
    passed: bool = True
    flags: list[str] = field(default_factory=list)
    refinement: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not math.isfinite(self.ratio):
            self.passed = False
            self.flags.append("non-finite ratio")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "passed": self.passed,
            "flags": list(self.flags),
            "refinement": list(self.refinement),
            "extra": self.extra,
        }


# --------------------------------------------------------------------------
# lattice helpers over HarmonicGrid balls
# --------------------------------------------------------------------------


def _trapezoid_weights(nodes: np.ndarray) -> np.ndarray:
    w = np.empty_like(nodes)
    d = np.diff(nodes)
    w[0] = d[0] / 2.0
    w[-1] = d[-1] / 2.0
    w[1:-1] = (d[:-1] + d[1:]) / 2.0
    return w


def _check_ball_in_grid(grid: HarmonicGrid, ball: QuarterBall) -> list[str]:
    ht, hx = grid.spacing()
    flags = []
    R = ball.radius
    if ball.t0 - R < grid.t_nodes[0] - ht or ball.t0 + R > grid.t_nodes[-1] + ht:
        raise ValueError(f"ball {ball} exceeds the grid in t")
    if ball.x0 + R > grid.x_nodes[-1] + hx:
        raise ValueError(f"ball {ball} exceeds the grid in x")
    if ball.x0 - R < grid.x_nodes[0] - hx and ball.x0 - R > 0:
        flags.append("x-low sliver outside lattice")
    return flags


def ball_lattice_max(grid: HarmonicGrid, ball: QuarterBall) -> float:
    """Max of |u| over lattice nodes inside the ball."""
    tt, xx = np.meshgrid(grid.t_nodes, grid.x_nodes, indexing="ij")
    mask = ball.contains(tt, xx)
    if not np.any(mask):
        raise ValueError(f"no lattice nodes inside {ball}")
    return float(np.max(np.abs(grid.values[mask])))


def ball_lattice_integral(
    grid: HarmonicGrid,
    ball: QuarterBall,
    transform: Callable[[np.ndarray], np.ndarray] | None = None,
) -> tuple[float, float, int]:
    """Weighted lattice integral over the ball and the lattice measure.

    Returns (integral of transform(u) dm, lattice measure of the ball,
    node count).  Using the same lattice quadrature for both keeps ratios
    of averages exactly scale-consistent.
    """
    lv = grid.lam
    wt = _trapezoid_weights(grid.t_nodes)
    wx = _trapezoid_weights(grid.x_nodes) * grid.x_nodes ** (2.0 * lv)
    tt, xx = np.meshgrid(grid.t_nodes, grid.x_nodes, indexing="ij")
    mask = ball.contains(tt, xx)
    if not np.any(mask):
        raise ValueError(f"no lattice nodes inside {ball}")
    w = np.outer(wt, wx)[mask]
    vals = grid.values[mask]
    if transform is not None:
        vals = transform(vals)
    return float(np.dot(w, vals)), float(np.sum(w)), int(np.sum(mask))


# --------------------------------------------------------------------------
# interior sup bounds
# --------------------------------------------------------------------------


def verify_moser(
    grid: HarmonicGrid, ball: QuarterBall, p: float
) -> VerificationReport:
    """sup over B against the p-average over the 12-fold ball."""
    if p <= 0.0:
        raise ValueError("p must be positive")
    flags = _check_ball_in_grid(grid, ball.scaled(12.0))
    lhs = ball_lattice_max(grid, ball)
    integral, meas, n_nodes = ball_lattice_integral(
        grid, ball.scaled(12.0), lambda u: np.abs(u) ** p
    )
    rhs = (integral / meas) ** (1.0 / p)
    regime = "interior" if ball.radius <= ball.x0 / 4.0 else "near_axis"
    return VerificationReport(
        suite="moser",
        params={
            "lambda": grid.lam,
            "p": p,
            "t0": ball.t0,
            "x0": ball.x0,
            "R": ball.radius,
            "regime": regime,
        },
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else math.inf,
        flags=flags,
        extra={"nodes_in_12R": n_nodes, "lattice_measure_12R": meas},
    )


def _gradient_grid(grid: HarmonicGrid) -> HarmonicGrid:
    """|grad u|^2 on the interior lattice by central differences."""
    ht, hx = grid.spacing()
    u = grid.values
    ut = (u[2:, 1:-1] - u[:-2, 1:-1]) / (2.0 * ht)
    ux = (u[1:-1, 2:] - u[1:-1, :-2]) / (2.0 * hx)
    return HarmonicGrid(
        grid.t_nodes[1:-1],
        grid.x_nodes[1:-1],
        ut**2 + ux**2,
        grid.lam,
        provenance="analytic",
    )


def verify_caccioppoli(grid: HarmonicGrid, ball: QuarterBall) -> VerificationReport:
    """Interior gradient energy against the scaled L2 mass on the double ball."""
    flags = _check_ball_in_grid(grid, ball.scaled(2.0))
    grad = _gradient_grid(grid)
    lhs, _, n_in = ball_lattice_integral(grad, ball)
    integral, _, _ = ball_lattice_integral(grid, ball.scaled(2.0), lambda u: u**2)
    rhs = integral / ball.radius**2
    return VerificationReport(
        suite="caccioppoli",
        params={
            "lambda": grid.lam,
            "t0": ball.t0,
            "x0": ball.x0,
            "R": ball.radius,
        },
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else (0.0 if lhs == 0.0 else math.inf),
        flags=flags,
        extra={"nodes_in_R": n_in},
    )


def _disk_tensor_integral(
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
    ball: QuarterBall,
    n_r: int = 48,
    n_psi: int = 96,
) -> float:
    """Unweighted integral of fn over the full disk via polar tensor rules.

    Radial weight r dr is a Jacobi factor; the angular direction is periodic
    and uses a uniform rule.
    """
    rw_nodes, rw_weights = gauss_jacobi(n_r, 0.0, 1.0)
    r = 0.5 * ball.radius * (rw_nodes + 1.0)
    wr = rw_weights * (ball.radius / 2.0) ** 2  # maps (1+x) dx -> r dr
    psi = 2.0 * math.pi * np.arange(n_psi) / n_psi
    wpsi = 2.0 * math.pi / n_psi
    tt = ball.t0 + r[:, None] * np.cos(psi)[None, :]
    xx = ball.x0 + r[:, None] * np.sin(psi)[None, :]
    vals = fn(tt, xx)
    return float(np.sum(vals * wr[:, None]) * wpsi)


def verify_sobolev(
    field_under_test: AnalyticField,
    ball: QuarterBall,
    n_r: int = 48,
    n_psi: int = 96,
) -> VerificationReport:
    """Sup bound on a disk by the three-term scaled H2 right-hand side.

    All integrals are plain dt dx (no weight); derivatives come from the
    field's closed forms, so the only discretization is the polar rule and
    the sup lattice.
    """
    if ball.t0 - ball.radius <= 0 or ball.x0 - ball.radius <= 0:
        raise ValueError("embedding checks need the disk inside the open quadrant")
    R = ball.radius

    def sq(fn):
        return _disk_tensor_integral(
            lambda t, x: fn(t, x), ball, n_r=n_r, n_psi=n_psi
        )

    f2 = sq(lambda t, x: field_under_test(t, x) ** 2)
    g2 = sq(
        lambda t, x: (lambda g: g[0] ** 2 + g[1] ** 2)(field_under_test.grad(t, x))
    )
    h2 = sq(
        lambda t, x: (lambda h: h[0] ** 2 + 2.0 * h[1] ** 2 + h[2] ** 2)(
            field_under_test.hess(t, x)
        )
    )
    rhs = math.sqrt(f2 / R**2) + math.sqrt(g2) + math.sqrt(R**2 * h2)
    # sup over a polar lattice plus the center
    r = np.linspace(0.0, R, n_r)
    psi = np.linspace(0.0, 2.0 * math.pi, 2 * n_psi, endpoint=False)
    tt = ball.t0 + r[:, None] * np.cos(psi)[None, :]
    xx = ball.x0 + r[:, None] * np.sin(psi)[None, :]
    lhs = float(np.max(np.abs(field_under_test(tt, xx))))
    return VerificationReport(
        suite="sobolev",
        params={
            "field": field_under_test.name,
            "t0": ball.t0,
            "x0": ball.x0,
            "R": R,
        },
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else math.inf,
        extra={"term_l2": math.sqrt(f2 / R**2), "term_grad": math.sqrt(g2),
               "term_hess": math.sqrt(R**2 * h2)},
    )


def verify_l2_moser(
    grid: HarmonicGrid,
    center: tuple[float, float],
    r: float,
    alpha: float,
) -> VerificationReport:
    """L2 sup bound with margin alpha, in the away-from-axis regime."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    t0, x0 = center
    if r > x0 / 2.0:
        raise ValueError(
            f"away-from-axis geometry requires r <= x0/2, got r={r}, x0={x0}"
        )
    inner = QuarterBall(t0, x0, alpha * r)
    margin = QuarterBall(t0, x0, (1.0 - alpha) * r)
    outer = QuarterBall(t0, x0, r)
    flags = _check_ball_in_grid(grid, outer)
    lhs = ball_lattice_max(grid, inner)
    integral, _, _ = ball_lattice_integral(grid, outer, lambda u: u**2)
    _, meas_margin, _ = ball_lattice_integral(grid, margin)
    rhs = math.sqrt(integral / meas_margin)
    return VerificationReport(
        suite="l2moser",
        params={"lambda": grid.lam, "t0": t0, "x0": x0, "r": r, "alpha": alpha},
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else math.inf,
        flags=flags,
    )


# --------------------------------------------------------------------------
# iteration
# --------------------------------------------------------------------------


def iteration_constant(lam: float, p: float, tau: float) -> float:
    """Closed form of the geometric absorption series.

    C = sum_j 2^-j tau^(-j (2 lam + 1)/p), which converges exactly when
    2 tau^((2 lam + 1)/p) > 1.
    """
    lv = lambda_value(lam)
    if not 0.0 < tau < 1.0:
        raise ValueError("tau must lie in (0, 1)")
    if p <= 0.0:
        raise ValueError("p must be positive")
    growth = tau ** (-(2.0 * lv + 1.0) / p) / 2.0
    if growth >= 1.0:
        raise NumericalError(
            f"iteration series diverges: need 2*tau^((2*lam+1)/p) > 1, "
            f"got {2.0 * tau ** ((2.0 * lv + 1.0) / p):.6g} with "
            f"lam={lv}, p={p}, tau={tau}"
        )
    return 1.0 / (1.0 - growth)


def iteration_demo(
    f_of_r: Callable[[float], float],
    R: float,
    lam: float,
    p: float,
    tau: float,
    *,
    center: tuple[float, float],
    lp_norm_2R: float,
    k: int = 30,
    measure_tol: float = 1e-9,
) -> VerificationReport:
    """Run the radius recursion with measured sup values.

    Radii climb from R to 2R as r_{j+1} = r_j + (1-tau) tau^j R.  The
    empirical one-step constant is the smallest making every measured step
    inequality true; the final bound assembled from it must dominate the
    measured sup at R (nonnegative gap up to rounding).
    """
    lv = lambda_value(lam)
    c_geo = iteration_constant(lv, p, tau)  # validates tau as a side effect
    t0, x0 = center
    radii = [R]
    for j in range(k):
        radii.append(radii[-1] + (1.0 - tau) * tau**j * R)
    f_vals = np.array([f_of_r(r) for r in radii])
    gaps = [
        measure_ball(QuarterBall(t0, x0, radii[j + 1] - radii[j]), lv, measure_tol)
        for j in range(k)
    ]
    if lp_norm_2R <= 0.0:
        raise ValueError("lp_norm_2R must be positive")
    c_steps = [
        max(0.0, (f_vals[j] - 0.5 * f_vals[j + 1]) * gaps[j] ** (1.0 / p) / lp_norm_2R)
        for j in range(k)
    ]
    c_emp = max(c_steps)
    series = sum(2.0**-j * gaps[j] ** (-1.0 / p) for j in range(k))
    bound = 2.0**-k * f_vals[k] + c_emp * series * lp_norm_2R
    gap = bound - f_vals[0]
    m_R = measure_ball(QuarterBall(t0, x0, R), lv, measure_tol)
    c_final = bound * m_R ** (1.0 / p) / lp_norm_2R
    return VerificationReport(
        suite="iteration",
        params={"lambda": lv, "p": p, "tau": tau, "R": R, "t0": t0, "x0": x0, "k": k},
        lhs=float(f_vals[0]),
        rhs=float(bound),
        ratio=float(f_vals[0] / bound) if bound > 0 else math.inf,
        passed=bool(gap >= -1e-12 * max(abs(bound), 1.0)),
        extra={
            "gap": float(gap),
            "c_empirical_step": float(c_emp),
            "c_geometric_series": float(c_geo),
            "c_final_form": float(c_final),
            "sup_at_2R": float(f_vals[-1]),
        },
    )


# --------------------------------------------------------------------------
# polar machinery
# --------------------------------------------------------------------------


@dataclass
class PolarProfile:
    """Circle statistics of u on the half-disk of radius 5R."""

    r_nodes: np.ndarray        # profile radii in (R, 5R)
    r_log_weights: np.ndarray  # weights for dr/r integrals on r_nodes
    m_p: np.ndarray
    m_1: np.ndarray
    m_inf: np.ndarray
    H: float
    p: float
    lam: float
    R: float
    ball_measure_5R: float

    def __post_init__(self) -> None:
        if np.any(self.m_p < 0) or np.any(self.m_inf < 0) or np.any(self.m_1 < 0):
            raise ValueError("circle statistics must be nonnegative")


def polar_quantities(
    u_eval: Callable[[np.ndarray, np.ndarray], np.ndarray],
    R: float,
    p: float,
    lam: float,
    n_theta: int = 64,
    *,
    n_r_bulk: int = 40,
    n_r_profile: int = 48,
    n_theta_sup: int = 241,
) -> PolarProfile:
    """Circle means and sups of u over the half-disk of radius 5R.

    u_eval(t, x) must accept the full half-disk, including negative t;
    the average H normalizes by the quadrant-clipped ball measure.
    """
    lv = lambda_value(lam)
    if not 0.0 < p <= 1.0:
        raise ValueError("p must lie in (0, 1]")
    theta_rule = sine_power_rule(n_theta, 2.0 * lv)
    cos_t, sin_t = np.cos(theta_rule.nodes), np.sin(theta_rule.nodes)

    def circle_stats(r: float) -> tuple[float, float, float]:
        vals = np.abs(u_eval(r * cos_t, r * sin_t))
        m_p = float(np.dot(theta_rule.weights, vals**p)) ** (1.0 / p)
        m_1 = float(np.dot(theta_rule.weights, vals))
        theta_dense = np.linspace(0.0, math.pi, n_theta_sup)
        dv = np.abs(u_eval(r * np.cos(theta_dense), r * np.sin(theta_dense)))
        m_inf = max(float(np.max(vals)), float(np.max(dv)))
        return m_p, m_1, m_inf

    # H: radial weight r^(2 lam + 1) handled by a Jacobi rule on [0, 5R]
    rj, wj = gauss_jacobi(n_r_bulk, 0.0, 2.0 * lv + 1.0)
    r_bulk = 2.5 * R * (rj + 1.0)
    w_bulk = wj * (2.5 * R) ** (2.0 * lv + 2.0)
    h_sum = 0.0
    for r, w in zip(r_bulk, w_bulk):
        vals = np.abs(u_eval(r * cos_t, r * sin_t))
        h_sum += w * float(np.dot(theta_rule.weights, vals**p))
    meas = measure_ball(QuarterBall(0.0, 0.0, 5.0 * R), lv)
    H = h_sum / meas

    # profile radii on (R, 5R): Gauss-Legendre in log r serves the dr/r
    # integrals and the minimum search simultaneously
    log_rule = gauss_legendre(n_r_profile, math.log(R), math.log(5.0 * R))
    r_nodes = np.exp(log_rule.nodes)
    stats = [circle_stats(float(r)) for r in r_nodes]
    m_p_arr = np.array([s[0] for s in stats])
    m_1_arr = np.array([s[1] for s in stats])
    m_inf_arr = np.array([s[2] for s in stats])
    return PolarProfile(
        r_nodes=r_nodes,
        r_log_weights=log_rule.weights,
        m_p=m_p_arr,
        m_1=m_1_arr,
        m_inf=m_inf_arr,
        H=H,
        p=p,
        lam=lv,
        R=R,
        ball_measure_5R=meas,
    )


def polar_case_check(profile: PolarProfile, R: float | None = None) -> VerificationReport:
    """Existence of a good circle plus the three supporting estimates.

    - a radius minimizing m_inf / H^(1/p) (reported ratio must be finite);
    - the interpolation bound m_1 <= m_inf^(1-p) m_p^p pointwise;
    - the ring-average bound: integral over (R, 5R) of m_p^p dr/r is at
      most H times the explicit constant ball_measure_5R / R^(2 lam + 2);
    - the concavity (Jensen) bound for the log of the same averages.
    """
    R = profile.R if R is None else R
    p = profile.p
    H = profile.H
    idx = int(np.argmin(profile.m_inf / H ** (1.0 / p)))
    r0 = float(profile.r_nodes[idx])
    ratio = float(profile.m_inf[idx] / H ** (1.0 / p))

    flags: list[str] = []
    # interpolation inequality, pointwise on the profile radii
    interp_rhs = profile.m_inf ** (1.0 - p) * profile.m_p**p
    interp_ok = bool(np.all(profile.m_1 <= interp_rhs * (1.0 + 1e-6) + 1e-300))
    if not interp_ok:
        flags.append("interpolation inequality violated")

    # ring-average bound with its explicit constant
    ring_lhs = float(np.dot(profile.r_log_weights, profile.m_p**p))
    k_exact = profile.ball_measure_5R / R ** (2.0 * profile.lam + 2.0)
    ring_ok = bool(ring_lhs <= k_exact * H * (1.0 + 1e-6))
    if not ring_ok:
        flags.append("ring-average bound violated")

    # Jensen on the normalized measure dr/r over (R, 5R)
    g = profile.m_p**p / H
    L = math.log(5.0)
    jensen_lhs = float(np.dot(profile.r_log_weights, np.log(np.maximum(g, 1e-300))))
    jensen_rhs = L * math.log(max(float(np.dot(profile.r_log_weights, g)) / L, 1e-300))
    jensen_ok = bool(jensen_lhs <= jensen_rhs + 1e-6 * max(abs(jensen_rhs), 1.0))
    if not jensen_ok:
        flags.append("Jensen bound violated")

    # kernel-sup chain on sampled (rho, r) pairs: empirical constant only
    k_chain = 0.0
    n = profile.r_nodes.size
    for i in range(0, n - 1, max(1, n // 8)):
        for j in range(i + max(1, n // 8), n, max(1, n // 8)):
            rho, r = profile.r_nodes[i], profile.r_nodes[j]
            s = rho / r
            if s >= 0.999:
                continue
            bound = (1.0 - s) ** -(2.0 * profile.lam + 1.0) * profile.m_1[j]
            if bound > 0:
                k_chain = max(k_chain, profile.m_inf[i] / bound)

    return VerificationReport(
        suite="polar",
        params={"lambda": profile.lam, "p": p, "R": R},
        lhs=float(profile.m_inf[idx]),
        rhs=float(H ** (1.0 / p)),
        ratio=ratio,
        passed=bool(interp_ok and ring_ok and jensen_ok and math.isfinite(ratio)),
        flags=flags,
        extra={
            "r0": r0,
            "ring_lhs": ring_lhs,
            "ring_constant_exact": k_exact,
            "H": H,
            "jensen_lhs": jensen_lhs,
            "jensen_rhs": jensen_rhs,
            "kernel_chain_constant": float(k_chain),
        },
    )


# --------------------------------------------------------------------------
# maximal-function verifiers
# --------------------------------------------------------------------------


def verify_domination(
    f: BoundaryFunction,
    q: float,
    x_nodes: np.ndarray,
    lam: float,
    *,
    t_sweep: np.ndarray | None = None,
    n_y: int = 96,
    n_beta: int = 96,
    profile_extension: float = 2.0,
    profiles: dict[str, MaximalProfile] | None = None,
) -> VerificationReport:
    """Cone maximal function against the maximal average of the ray one.

    Checks N(f)(x) <= C * [M(R(f)^q)(x)]^(1/q) on the lattice and reports
    the empirical C (max over nodes).  The ray profile is computed on an
    extended lattice so the averages see its decay; precomputed profiles on
    such a lattice may be passed in for reuse across q values.
    """
    lv = lambda_value(lam)
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    x_nodes = np.asarray(x_nodes, dtype=float)
    if profiles is None:
        # extended lattice so the averages see the profile's decay
        x_ext = np.unique(
            np.concatenate(
                [
                    x_nodes,
                    np.geomspace(x_nodes[0] / 2.0, x_nodes[-1] * profile_extension, 24),
                ]
            )
        )
        profiles = maximal_profiles(
            f, x_ext, lv, t_sweep=t_sweep, n_y=n_y, n_beta=n_beta
        )
    rad, ntg = profiles["radial"], profiles["nontangential"]
    x_ext = rad.x_nodes
    if np.any(np.searchsorted(x_ext, x_nodes) >= x_ext.size) or not np.all(
        np.isin(x_nodes, x_ext)
    ):
        raise ValueError("x_nodes must be a subset of the profile lattice")
    g = from_profile(x_ext, rad.values**q, label="ray_max_power")
    mprof = hardy_littlewood_max(g, x_nodes, None, lv)
    ix = np.searchsorted(x_ext, x_nodes)
    n_vals = ntg.values[ix]
    m_vals = mprof.values ** (1.0 / q)
    if np.any(m_vals <= 0.0):
        raise NumericalError("maximal average vanished on the lattice")
    ratios = n_vals / m_vals
    c_emp = float(np.max(ratios))
    r_vals = rad.values[ix]
    pointwise_order = bool(np.all(n_vals >= r_vals))
    return VerificationReport(
        suite="domination",
        params={"lambda": lv, "q": q, "f": f.label, "n_x": int(x_nodes.size)},
        lhs=float(np.max(n_vals)),
        rhs=float(np.max(m_vals)),
        ratio=c_emp,
        passed=pointwise_order and bool(np.all(np.isfinite(ratios))),
        flags=[] if pointwise_order else ["cone max fell below ray max"],
        extra={
            "x": x_nodes.tolist(),
            "nontangential": n_vals.tolist(),
            "radial": r_vals.tolist(),
            "bound": m_vals.tolist(),
            "truncation": list(rad.truncation),
        },
    )


def verify_norm_equivalence(
    family: Sequence[BoundaryFunction],
    lam: float,
    *,
    x_nodes: np.ndarray,
    t_sweep: np.ndarray | None = None,
    n_y: int = 96,
    n_beta: int = 96,
) -> VerificationReport:
    """Weighted L1 norms of the two maximal functions on a common lattice.

    The ratio per family member is computed from amplitude-cancelled sums,
    so it is exactly invariant under f -> c f; the reported lhs/rhs are the
    scaled norms.
    """
    lv = lambda_value(lam)
    x_nodes = np.asarray(x_nodes, dtype=float)
    rows = []
    worst = 1.0
    for f in family:
        profs = maximal_profiles(f, x_nodes, lv, t_sweep=t_sweep, n_y=n_y, n_beta=n_beta)
        rad, ntg = profs["radial"], profs["nontangential"]
        base_r = l1_norm(
            MaximalProfile(
                rad.x_nodes, rad.base_values, "radial", rad.truncation,
                rad.argmax_t, rad.argmax_y, amplitude=1.0, base_values=rad.base_values,
            ),
            lv,
        )
        base_n = l1_norm(
            MaximalProfile(
                ntg.x_nodes, ntg.base_values, "nontangential", ntg.truncation,
                ntg.argmax_t, ntg.argmax_y, amplitude=1.0, base_values=ntg.base_values,
            ),
            lv,
        )
        ratio = base_n / base_r if base_r > 0 else math.inf
        rows.append(
            {
                "f": f.label,
                "norm_radial": rad.amplitude * base_r,
                "norm_nontangential": ntg.amplitude * base_n,
                "ratio": ratio,
            }
        )
        worst = max(worst, ratio)
    ok = all(r["ratio"] >= 1.0 and math.isfinite(r["ratio"]) for r in rows)
    return VerificationReport(
        suite="normequiv",
        params={"lambda": lv, "family": [f.label for f in family]},
        lhs=float(rows[0]["norm_nontangential"]) if rows else 0.0,
        rhs=float(rows[0]["norm_radial"]) if rows else 0.0,
        ratio=float(worst),
        passed=ok,
        flags=[] if ok else ["norm order violated"],
        extra={"per_function": rows},
    )
