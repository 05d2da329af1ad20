"""Numba implementations of the hot numeric kernels.

Each output node is computed by an independent sequential inner loop, so
results are bit-identical for any number of threads and identical to a
sequential run of the same code.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def poisson_points(t_pts, x_pts, y, gw, cb, wb, lam):
    n = t_pts.shape[0]
    ny = y.shape[0]
    nm = cb.shape[0]
    out = np.empty(n)
    e = -(lam + 1.0)
    c = 2.0 * lam / np.pi
    for k in prange(n):
        t = t_pts[k]
        x = x_pts[k]
        tt = t * t + x * x
        acc = 0.0
        for j in range(ny):
            yj = y[j]
            base = tt + yj * yj
            xy2 = 2.0 * x * yj
            s = 0.0
            for m in range(nm):
                s += wb[m] * (base - xy2 * cb[m]) ** e
            acc += gw[j] * s
        out[k] = c * t * acc
    return out


@njit(cache=True, parallel=True)
def poisson_grid(t_nodes, x_nodes, y, gw, cb, wb, lam):
    nt = t_nodes.shape[0]
    nx = x_nodes.shape[0]
    ny = y.shape[0]
    nm = cb.shape[0]
    out = np.empty((nt, nx))
    e = -(lam + 1.0)
    c = 2.0 * lam / np.pi
    for idx in prange(nt * nx):
        i = idx // nx
        j = idx % nx
        t = t_nodes[i]
        x = x_nodes[j]
        tt = t * t + x * x
        acc = 0.0
        for k in range(ny):
            yk = y[k]
            base = tt + yk * yk
            xy2 = 2.0 * x * yk
            s = 0.0
            for m in range(nm):
                s += wb[m] * (base - xy2 * cb[m]) ** e
            acc += gw[k] * s
        out[i, j] = c * t * acc
    return out


@njit(cache=True, parallel=True)
def disk_kernel_grid(s, theta, phi, cb, wb, lam):
    ni = theta.shape[0]
    nj = phi.shape[0]
    nm = cb.shape[0]
    out = np.empty((ni, nj))
    e = -(lam + 1.0)
    c = lam * (1.0 - s * s) / np.pi
    for idx in prange(ni * nj):
        i = idx // nj
        j = idx % nj
        t = s * np.cos(theta[i])
        x = s * np.sin(theta[i])
        xi = np.cos(phi[j])
        eta = np.sin(phi[j])
        base = (t - xi) ** 2 + (x - eta) ** 2
        m2 = 2.0 * x * eta
        acc = 0.0
        for m in range(nm):
            acc += wb[m] * (base + m2 * (1.0 - cb[m])) ** e
        out[i, j] = c * acc
    return out


@njit(cache=True)
def _stencil_defect(u, ax):
    nt, nx = u.shape
    worst = 0.0
    for i in range(1, nt - 1):
        for j in range(1, nx - 1):
            a = ax[j]
            d = (
                u[i + 1, j]
                + u[i - 1, j]
                + (1.0 + a) * u[i, j + 1]
                + (1.0 - a) * u[i, j - 1]
                - 4.0 * u[i, j]
            )
            if abs(d) > worst:
                worst = abs(d)
    return worst


@njit(cache=True)
def sor_solve(u, ax, omega, tol_defect, max_sweeps, check_every=8):
    nt, nx = u.shape
    defect = _stencil_defect(u, ax)
    if defect <= tol_defect:
        return 0, defect
    for sweep in range(1, max_sweeps + 1):
        for color in range(2):
            for i in range(1, nt - 1):
                j0 = 1 if (i + 1) % 2 == color else 2
                for j in range(j0, nx - 1, 2):
                    a = ax[j]
                    gs = 0.25 * (
                        u[i + 1, j]
                        + u[i - 1, j]
                        + (1.0 + a) * u[i, j + 1]
                        + (1.0 - a) * u[i, j - 1]
                    )
                    u[i, j] += omega * (gs - u[i, j])
        if sweep % check_every == 0 or sweep == max_sweeps:
            defect = _stencil_defect(u, ax)
            if defect <= tol_defect:
                return sweep, defect
    return max_sweeps, _stencil_defect(u, ax)
