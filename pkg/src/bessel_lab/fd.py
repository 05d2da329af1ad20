"""Finite-difference Dirichlet oracle on rectangles.

Independent second opinion on harmonicity: the 5-point stencil with the
first-order term by central differences,

    (u_N + u_S - 2 u_C)/h^2 + (u_E + u_W - 2 u_C)/h^2
        + (lam / x_j) (u_E - u_W)/h = 0,

solved by red-black SOR.  The rectangle never touches the axis, and the
diagonal-dominance condition h * lam / x_lo < 1 keeps the system an
M-matrix, which is what makes the discrete maximum principle exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .backend import kernels
from .errors import SolverConvergenceError
from .extension import HarmonicGrid
from .geometry import lambda_value

__all__ = [
    "RectangleProblem",
    "fd_solve",
    "convergence_study",
    "check_discrete_max_principle",
]


@dataclass(frozen=True)
class RectangleProblem:
    """Dirichlet problem on [t_lo, t_hi] x [x_lo, x_hi], spacing h.

    ``boundary`` is a vectorized callable (t, x) -> value supplying data on
    all four sides.
    """

    t_lo: float
    t_hi: float
    x_lo: float
    x_hi: float
    h: float
    lam: float
    boundary: Callable[[np.ndarray, np.ndarray], np.ndarray]

    def __post_init__(self) -> None:
        if not self.x_lo > 0.0:
            raise ValueError("x_lo must be positive (axis excluded)")
        if not (self.t_hi > self.t_lo and self.x_hi > self.x_lo and self.t_lo >= 0.0):
            raise ValueError("degenerate rectangle")
        if not self.h > 0.0:
            raise ValueError("h must be positive")
        for lo, hi, name in (
            (self.t_lo, self.t_hi, "t"),
            (self.x_lo, self.x_hi, "x"),
        ):
            n = (hi - lo) / self.h
            if abs(n - round(n)) > 1e-9 * max(n, 1.0):
                raise ValueError(f"h={self.h} does not divide the {name}-side {hi - lo}")
        lv = lambda_value(self.lam)
        if self.h * lv / self.x_lo >= 1.0:
            raise ValueError(
                f"diagonal dominance violated: h*lam/x_lo = {self.h * lv / self.x_lo:.3g} >= 1"
            )

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        nt = round((self.t_hi - self.t_lo) / self.h) + 1
        nx = round((self.x_hi - self.x_lo) / self.h) + 1
        return (
            self.t_lo + self.h * np.arange(nt),
            self.x_lo + self.h * np.arange(nx),
        )

    def with_h(self, h: float) -> "RectangleProblem":
        return RectangleProblem(
            self.t_lo, self.t_hi, self.x_lo, self.x_hi, h, self.lam, self.boundary
        )


def fd_solve(
    prob: RectangleProblem,
    solver_tol: float = 1e-10,
    *,
    omega: float | None = None,
    max_sweeps: int | None = None,
) -> HarmonicGrid:
    """Solve the Dirichlet problem; the contract is a final interior
    residual of the discrete operator at most solver_tol * max(1, |data|).

    Scaling by the boundary-data magnitude keeps the tolerance meaningful:
    the rounding floor of the residual itself grows with |u| / h^2."""
    lv = lambda_value(prob.lam)
    t_nodes, x_nodes = prob.nodes()
    nt, nx = t_nodes.size, x_nodes.size
    if nt < 3 or nx < 3:
        raise ValueError("rectangle too small for interior nodes")
    tt, xx = np.meshgrid(t_nodes, x_nodes, indexing="ij")
    u = np.zeros((nt, nx))
    # boundary data on all four sides
    u[0, :] = prob.boundary(tt[0, :], xx[0, :])
    u[-1, :] = prob.boundary(tt[-1, :], xx[-1, :])
    u[:, 0] = prob.boundary(tt[:, 0], xx[:, 0])
    u[:, -1] = prob.boundary(tt[:, -1], xx[:, -1])
    # initial guess: blend of the two t-sides
    theta = ((t_nodes - t_nodes[0]) / (t_nodes[-1] - t_nodes[0]))[:, None]
    u[1:-1, 1:-1] = ((1.0 - theta) * u[0, :][None, :] + theta * u[-1, :][None, :])[
        1:-1, 1:-1
    ]

    ax = prob.h * lv / x_nodes
    if omega is None:
        l_min = min(prob.t_hi - prob.t_lo, prob.x_hi - prob.x_lo)
        omega = 2.0 / (1.0 + math.sin(math.pi * prob.h / l_min))
    if max_sweeps is None:
        digits = max(4.0, -math.log10(max(solver_tol, 1e-300)))
        max_sweeps = int(40 * (nt + nx) * digits / 10.0) + 2000
    bscale = max(1.0, float(np.max(np.abs(u))))
    tol_defect = solver_tol * prob.h**2 * bscale
    sweeps, defect = kernels.sor_solve(u, ax, float(omega), tol_defect, max_sweeps)
    if defect > tol_defect:
        raise SolverConvergenceError(
            f"SOR stalled: scaled residual {defect / (prob.h**2 * bscale):.3e} > "
            f"tol {solver_tol:.3e} after {sweeps} sweeps"
        )
    return HarmonicGrid(t_nodes, x_nodes, u, lv, provenance="fd_solution")


def check_discrete_max_principle(grid: HarmonicGrid, slack: float = 1e-9) -> dict:
    """Interior values must lie within [min, max] of the boundary data."""
    u = grid.values
    boundary = np.concatenate([u[0, :], u[-1, :], u[:, 0], u[:, -1]])
    interior = u[1:-1, 1:-1]
    scale = max(float(np.max(np.abs(boundary))), 1e-300)
    lo, hi = float(np.min(boundary)), float(np.max(boundary))
    ok = bool(
        np.all(interior >= lo - slack * scale) and np.all(interior <= hi + slack * scale)
    )
    return {
        "ok": ok,
        "boundary_min": lo,
        "boundary_max": hi,
        "interior_min": float(np.min(interior)),
        "interior_max": float(np.max(interior)),
    }


def convergence_study(
    prob: RectangleProblem,
    h_list: list[float],
    reference: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None,
    solver_tol: float = 1e-10,
) -> dict:
    """Observed order against an analytic reference or the finest solve.

    h_list must be dyadic (each step halves).  Errors at rounding level are
    reported as "exact" and excluded from the order estimate.
    """
    h_list = sorted(float(h) for h in h_list)[::-1]
    for a, b in zip(h_list[:-1], h_list[1:]):
        if abs(a / b - 2.0) > 1e-9:
            raise ValueError(f"h list must be dyadic, got {h_list}")
    solutions = {h: fd_solve(prob.with_h(h), solver_tol) for h in h_list}

    errors: dict[float, float] = {}
    scale = max(
        float(np.max(np.abs(g.values))) for g in solutions.values()
    )
    for h, grid in solutions.items():
        if reference is not None:
            tt, xx = np.meshgrid(grid.t_nodes, grid.x_nodes, indexing="ij")
            ref = reference(tt, xx)
            diff = (grid.values - ref)[1:-1, 1:-1]
        else:
            if h == h_list[-1]:
                continue
            fine = solutions[h_list[-1]]
            step = round(h / h_list[-1])
            ref = fine.values[::step, ::step]
            diff = (grid.values - ref)[1:-1, 1:-1]
        errors[h] = float(np.max(np.abs(diff)))

    hs = sorted(errors, reverse=True)
    orders = []
    exact = all(errors[h] <= 1e-11 * scale for h in hs)
    if not exact:
        for a, b in zip(hs[:-1], hs[1:]):
            if errors[b] > 0:
                orders.append(math.log2(errors[a] / errors[b]))
    return {
        "h": hs,
        "errors": [errors[h] for h in hs],
        "orders": orders,
        "exact": exact,
        "scale": scale,
    }
