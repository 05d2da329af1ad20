"""Maximal operators: pointwise order, scaling, averages, norms."""

import math

import numpy as np
import pytest

from bessel_lab.boundary import constant, from_profile, indicator, sum_boundary, tent
from bessel_lab.geometry import Interval, measure_interval
from bessel_lab.maximal import (
    ConeSampling,
    geometric_sweep,
    hardy_littlewood_max,
    l1_norm,
    maximal_profiles,
    radial_max,
)


@pytest.fixture(scope="module")
def indicator_profiles():
    x_nodes = np.linspace(0.2, 6.0, 24)
    profs = maximal_profiles(indicator(1.0, 2.0), x_nodes, 1.0, n_y=64, n_beta=64)
    return x_nodes, profs


class TestSweeps:
    def test_geometric_ratio_bounds(self):
        sweep = geometric_sweep(0.1, 10.0, 1.05)
        assert sweep[0] == pytest.approx(0.1)
        assert sweep[-1] >= 10.0
        assert np.all(np.diff(np.log(sweep)) <= math.log(1.05) + 1e-12)
        with pytest.raises(ValueError):
            geometric_sweep(0.1, 10.0, 1.2)
        with pytest.raises(ValueError):
            geometric_sweep(1.0, 0.5)

    def test_cone_needs_nine_points(self):
        with pytest.raises(ValueError):
            ConeSampling(8)


class TestRadialAndCone:
    def test_constant_boundary_fixed(self):
        f = constant(1.0, (1e-3, 5e3), n_breaks=40)
        profs = maximal_profiles(
            f,
            np.linspace(0.5, 3.0, 5),
            1.0,
            t_sweep=geometric_sweep(0.05, 5.0),
            n_y=64,
        )
        assert np.max(np.abs(profs["radial"].values - 1.0)) < 1e-4
        assert np.max(np.abs(profs["nontangential"].values - 1.0)) < 1e-4

    def test_cone_dominates_ray_exactly(self, indicator_profiles):
        _, profs = indicator_profiles
        assert np.all(profs["nontangential"].values >= profs["radial"].values)

    def test_strict_gap_away_from_support(self, indicator_profiles):
        """Far from the bump the cone reaches it long before the ray does."""
        x_nodes, profs = indicator_profiles
        ix = int(np.argmin(np.abs(x_nodes - 5.0)))
        assert profs["nontangential"].values[ix] > 1.5 * profs["radial"].values[ix]

    def test_ray_bounded_by_sup(self, indicator_profiles):
        _, profs = indicator_profiles
        assert np.all(profs["radial"].values >= 0.0)
        assert np.max(profs["radial"].values) <= 1.0 + 1e-8

    def test_scaling_exact(self, indicator_profiles):
        x_nodes, profs = indicator_profiles
        scaled = maximal_profiles(
            indicator(1.0, 2.0).scaled(3.0), x_nodes, 1.0, n_y=64, n_beta=64
        )
        assert np.array_equal(scaled["radial"].values, 3.0 * profs["radial"].values)
        assert np.array_equal(
            scaled["nontangential"].values, 3.0 * profs["nontangential"].values
        )

    def test_sublinear(self):
        """operator(f + g) <= operator(f) + operator(g) on shared lattices."""
        f = indicator(1.0, 2.0)
        g = tent(2.5, 4.0)
        x_nodes = np.linspace(0.5, 5.0, 10)
        sweep = geometric_sweep(0.15, 12.0)
        kw = dict(t_sweep=sweep, n_y=48, n_beta=48)
        pf = maximal_profiles(f, x_nodes, 1.0, **kw)
        pg = maximal_profiles(g, x_nodes, 1.0, **kw)
        ps = maximal_profiles(sum_boundary(f, g), x_nodes, 1.0, **kw)
        for tag in ("radial", "nontangential"):
            assert np.all(
                ps[tag].values <= pf[tag].values + pg[tag].values + 1e-10
            )

    def test_radial_wrapper(self):
        prof = radial_max(
            indicator(1.0, 2.0), np.linspace(0.5, 3.0, 5), geometric_sweep(0.1, 8.0), 1.0
        )
        assert prof.operator_tag == "radial"
        assert prof.truncation[0] == pytest.approx(0.1)

    def test_truncation_stability(self):
        """Quadrupling the sweep range moves values by under 1%."""
        f = indicator(1.0, 2.0)
        x_nodes = np.linspace(0.5, 4.0, 8)
        base = maximal_profiles(
            f, x_nodes, 1.0, t_sweep=geometric_sweep(0.08, 10.0), n_y=48
        )
        wide = maximal_profiles(
            f, x_nodes, 1.0, t_sweep=geometric_sweep(0.02, 40.0), n_y=48
        )
        rel = np.abs(wide["radial"].values - base["radial"].values) / np.abs(
            wide["radial"].values
        )
        assert np.max(rel) < 0.01


class TestHardyLittlewood:
    def test_constant_average(self):
        g = constant(2.5, (0.01, 50.0))
        prof = hardy_littlewood_max(
            g, np.array([1.0, 3.0]), geometric_sweep(0.01, 0.5), 1.0
        )
        assert np.max(np.abs(prof.values - 2.5)) < 1e-10

    def test_indicator_unweighted_brute_force(self):
        """Centered averages of an indicator at lam = 0, against a dense
        scan of the overlap formula."""
        x = 4.0
        t_grid = geometric_sweep(0.05, 40.0, 1.01)
        prof = hardy_littlewood_max(indicator(1.0, 2.0), np.array([x]), t_grid, 0.0)

        def overlap(t):
            lo, hi = max(x - t, 0.0), x + t
            inter = max(0.0, min(hi, 2.0) - max(lo, 1.0))
            return inter / (hi - lo)

        dense = max(overlap(t) for t in np.linspace(0.05, 40.0, 20000))
        assert dense == pytest.approx(1.0 / 6.0, abs=1e-4)
        assert prof.values[0] == pytest.approx(dense, abs=5e-3)

    def test_dominates_value_at_continuity_points(self):
        g = tent(1.0, 3.0)
        xs = np.array([1.5, 2.0, 2.5])
        prof = hardy_littlewood_max(g, xs, geometric_sweep(0.002, 4.0), 1.0)
        assert np.all(prof.values >= g(xs) - 1e-3)

    def test_scaling_exact(self):
        g = indicator(1.0, 2.0)
        t_grid = geometric_sweep(0.05, 20.0)
        a = hardy_littlewood_max(g, np.array([1.5, 4.0]), t_grid, 1.0)
        b = hardy_littlewood_max(g.scaled(3.0), np.array([1.5, 4.0]), t_grid, 1.0)
        assert np.array_equal(b.values, 3.0 * a.values)


class TestL1Norm:
    def test_indicator_closed_form(self):
        assert l1_norm(indicator(1.0, 2.0), 1.0) == pytest.approx(7.0 / 3.0, rel=1e-13)

    def test_zero_profile(self):
        prof = from_profile(np.linspace(1.0, 2.0, 5), np.zeros(5))
        assert l1_norm(prof, 1.0) == 0.0

    def test_profile_matches_function(self):
        """A densely sampled function integrates like its analytic form."""
        x = np.linspace(1.0, 2.0, 4000)
        g = from_profile(x, np.interp(x, [1.0, 1.5, 2.0], [0.0, 1.0, 0.0]))
        want = l1_norm(tent(1.0, 2.0), 1.0)
        assert l1_norm(g, 1.0) == pytest.approx(want, rel=1e-6)

    def test_domain_restriction(self):
        full = l1_norm(indicator(1.0, 2.0), 0.0)
        half = l1_norm(indicator(1.0, 2.0), 0.0, domain=(1.0, 1.5))
        assert full == pytest.approx(1.0, rel=1e-13)
        assert half == pytest.approx(0.5, rel=1e-12)

    def test_radial_norm_stable_under_lattice_doubling(self):
        f = indicator(1.0, 2.0)
        sweep = geometric_sweep(0.05, 25.0)
        norms = []
        for n in (20, 40):
            prof = maximal_profiles(
                f, np.linspace(0.1, 8.0, n), 1.0, t_sweep=sweep,
                include_nontangential=False, n_y=48,
            )["radial"]
            norms.append(l1_norm(prof, 1.0))
        assert abs(norms[1] - norms[0]) / norms[1] < 0.02


class TestProfileIO:
    def test_csv_columns(self, tmp_path):
        prof = hardy_littlewood_max(
            indicator(1.0, 2.0), np.array([1.5, 4.0]), geometric_sweep(0.1, 10.0), 1.0
        )
        path = tmp_path / "m.csv"
        prof.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,value,argmax_t,argmax_y"
        assert len(lines) == 3
