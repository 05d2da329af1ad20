"""Head-to-head timing of the numba and numpy kernel backends.

Runs the three hot kernels on representative workloads and prints a small
table.  The numba path is what the package selects by default; exporting
BESSEL_LAB_NO_NUMBA=1 before importing switches production code to the
numpy path benchmarked here.

Usage:
    python benchmarks/bench_backends.py [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bessel_lab import _kernels_numpy as knp
from bessel_lab.quadrature import gauss_jacobi, gauss_legendre

try:
    from bessel_lab import _kernels_numba as knb
except ImportError:
    knb = None


def _workloads(quick: bool):
    lam = 1.0
    rng = np.random.default_rng(7)
    n_grid = 48 if quick else 96
    n_pts = 2000 if quick else 8000
    ny, nb = 96, 96
    y_rule = gauss_legendre(ny, 1.0, 3.0)
    y, wy = y_rule.nodes, y_rule.weights
    gw = wy * y ** (2 * lam)
    cb, wb = gauss_jacobi(nb, lam - 1.0, lam - 1.0)

    t_nodes = np.linspace(0.3, 1.5, n_grid)
    x_nodes = np.linspace(0.5, 3.0, n_grid)
    t_pts = rng.uniform(0.3, 1.5, n_pts)
    x_pts = rng.uniform(0.5, 3.0, n_pts)
    theta = np.linspace(0.05, np.pi - 0.05, 160)
    phi = np.linspace(0.05, np.pi - 0.05, 160)

    # SOR problem: quadratic data, 129^2 lattice
    n = 129
    h = 1.0 / (n - 1)
    ts = np.linspace(0.5, 1.5, n)
    xs = np.linspace(1.0, 2.0, n)
    tt, xx = np.meshgrid(ts, xs, indexing="ij")
    u0 = (1 + 2 * lam) * tt**2 - xx**2
    u_bnd = np.zeros_like(u0)
    u_bnd[0, :], u_bnd[-1, :], u_bnd[:, 0], u_bnd[:, -1] = (
        u0[0, :],
        u0[-1, :],
        u0[:, 0],
        u0[:, -1],
    )
    ax = h * lam / xs
    omega = 2.0 / (1.0 + np.sin(np.pi * h))

    return {
        "poisson_grid": lambda k: k.poisson_grid(t_nodes, x_nodes, y, gw, cb, wb, lam),
        "poisson_points": lambda k: k.poisson_points(t_pts, x_pts, y, gw, cb, wb, lam),
        "disk_kernel_grid": lambda k: k.disk_kernel_grid(0.9, theta, phi, cb, wb, lam),
        "sor_solve": lambda k: k.sor_solve(
            u_bnd.copy(), ax, omega, 1e-10 * h**2 * 10.0, 20000
        ),
    }


def _time(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    jobs = _workloads(args.quick)
    reps = 2 if args.quick else 3
    print(f"{'kernel':<18} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for name, job in jobs.items():
        t_np = _time(lambda: job(knp), reps)
        if knb is not None:
            job(knb)  # JIT warmup outside the timed region
            t_nb = _time(lambda: job(knb), reps)
            print(f"{name:<18} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<18} {t_np:>10.3f} {'n/a':>10} {'':>8}")
    if knb is None:
        print("numba backend unavailable; only the numpy path was timed")


if __name__ == "__main__":
    main()
