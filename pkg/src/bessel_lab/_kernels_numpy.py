"""Pure-numpy implementations of the hot numeric kernels.

Semantics match _kernels_numba exactly; within one backend the results are
deterministic run to run (fixed shapes give numpy a fixed pairwise
summation order).  Memory is kept bounded by chunking the outer dimension.
"""

from __future__ import annotations

import numpy as np

# target size (in doubles) for a temporary (chunk, n_y, n_beta) block
_BLOCK_BUDGET = 4_000_000


def poisson_points(t_pts, x_pts, y, gw, cb, wb, lam):
    """Semigroup values at paired points (t_pts[k], x_pts[k]).

    u = (2 lam t / pi) * sum_j gw[j] * sum_m wb[m]
        * (t^2 + x^2 + y_j^2 - 2 x y_j cb[m])^(-(lam+1))

    gw carries the boundary values and the y^(2 lam) measure factor.
    """
    t_pts = np.ascontiguousarray(t_pts, dtype=float)
    x_pts = np.ascontiguousarray(x_pts, dtype=float)
    n = t_pts.size
    out = np.empty(n)
    inner = y.size * cb.size
    chunk = max(1, _BLOCK_BUDGET // max(inner, 1))
    e = -(lam + 1.0)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        t = t_pts[lo:hi, None, None]
        x = x_pts[lo:hi, None, None]
        d = t * t + x * x + (y * y)[None, :, None] - (2.0 * x) * y[None, :, None] * cb[None, None, :]
        np.power(d, e, out=d)
        out[lo:hi] = np.einsum("kjm,j,m->k", d, gw, wb)
    out *= (2.0 * lam / np.pi) * t_pts
    return out


def poisson_grid(t_nodes, x_nodes, y, gw, cb, wb, lam):
    """Semigroup values on the tensor lattice t_nodes x x_nodes."""
    t_nodes = np.ascontiguousarray(t_nodes, dtype=float)
    x_nodes = np.ascontiguousarray(x_nodes, dtype=float)
    nt, nx = t_nodes.size, x_nodes.size
    out = np.empty((nt, nx))
    e = -(lam + 1.0)
    inner = y.size * cb.size
    chunk = max(1, _BLOCK_BUDGET // max(inner, 1))
    yy = (y * y)[None, :, None]
    ycb = y[None, :, None] * cb[None, None, :]
    for i in range(nt):
        t2 = t_nodes[i] * t_nodes[i]
        for lo in range(0, nx, chunk):
            hi = min(lo + chunk, nx)
            x = x_nodes[lo:hi, None, None]
            d = t2 + x * x + yy - (2.0 * x) * ycb
            np.power(d, e, out=d)
            out[i, lo:hi] = np.einsum("kjm,j,m->k", d, gw, wb)
        out[i, :] *= (2.0 * lam / np.pi) * t_nodes[i]
    return out


def disk_kernel_grid(s, theta, phi, cb, wb, lam):
    """Disk kernel P(s, theta[i], phi[j]) on a (theta, phi) lattice.

    P = (lam (1 - s^2) / pi) * sum_m wb[m]
        * ((t - xi)^2 + (x - eta)^2 + 2 x eta (1 - cb[m]))^(-(lam+1))

    with t = s cos(theta), x = s sin(theta), xi = cos(phi), eta = sin(phi).
    """
    theta = np.ascontiguousarray(theta, dtype=float)
    phi = np.ascontiguousarray(phi, dtype=float)
    t = s * np.cos(theta)
    x = s * np.sin(theta)
    xi = np.cos(phi)
    eta = np.sin(phi)
    e = -(lam + 1.0)
    base = (t[:, None] - xi[None, :]) ** 2 + (x[:, None] - eta[None, :]) ** 2
    m = 2.0 * x[:, None] * eta[None, :]
    out = np.empty((theta.size, phi.size))
    inner = phi.size * cb.size
    chunk = max(1, _BLOCK_BUDGET // max(inner, 1))
    for lo in range(0, theta.size, chunk):
        hi = min(lo + chunk, theta.size)
        d = base[lo:hi, :, None] + m[lo:hi, :, None] * (1.0 - cb[None, None, :])
        np.power(d, e, out=d)
        out[lo:hi] = d @ wb
    out *= lam * (1.0 - s * s) / np.pi
    return out


def _stencil_defect(u, ax):
    """Max-abs defect of the normalized 5-point stencil on interior nodes."""
    c = u[1:-1, 1:-1]
    n = u[2:, 1:-1]
    s = u[:-2, 1:-1]
    e_ = u[1:-1, 2:]
    w_ = u[1:-1, :-2]
    a = ax[None, 1:-1]
    d = n + s + (1.0 + a) * e_ + (1.0 - a) * w_ - 4.0 * c
    return float(np.max(np.abs(d))) if d.size else 0.0


def sor_solve(u, ax, omega, tol_defect, max_sweeps, check_every=8):
    """Red-black SOR for the Bessel 5-point stencil, in place.

    ax[j] = h * lam / x_j.  Convergence contract: the max-abs defect of
    the normalized stencil (diagonal 4) falls below tol_defect.  Returns
    (sweeps_used, final_defect); caller decides whether the budget ran out.
    """
    nt, nx = u.shape
    ii, jj = np.meshgrid(
        np.arange(1, nt - 1), np.arange(1, nx - 1), indexing="ij"
    )
    masks = [((ii + jj) % 2 == c) for c in (0, 1)]
    a = ax[None, 1:-1]
    defect = _stencil_defect(u, ax)
    if defect <= tol_defect:
        return 0, defect
    for sweep in range(1, max_sweeps + 1):
        for mask in masks:
            c = u[1:-1, 1:-1]
            gs = 0.25 * (
                u[2:, 1:-1]
                + u[:-2, 1:-1]
                + (1.0 + a) * u[1:-1, 2:]
                + (1.0 - a) * u[1:-1, :-2]
            )
            c[mask] += omega * (gs[mask] - c[mask])
        if sweep % check_every == 0 or sweep == max_sweeps:
            defect = _stencil_defect(u, ax)
            if defect <= tol_defect:
                return sweep, defect
    return max_sweeps, _stencil_defect(u, ax)
