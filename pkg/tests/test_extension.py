"""Kernels, harmonic extensions, residual operator, and the conjugate."""

import math

import numpy as np
import pytest

from bessel_lab.boundary import constant, from_profile, indicator, tent
from bessel_lab.errors import QuadratureConvergenceError
from bessel_lab.extension import (
    HarmonicGrid,
    calibrate_disk_kernel,
    conjugate_via_cr,
    disk_extend,
    disk_kernel,
    first_cr_residual,
    halfplane_kernel,
    poisson_extend,
    poisson_values,
    residual_bessel_laplace,
    residual_stats,
    second_cr_residual,
)
from bessel_lab.fields import harmonic_cubic, harmonic_quadratic, linear_t
from bessel_lab.quadrature import composite_pieces_rule, sine_weighted_rule


def _kernel_mass(t, x, lam, y_max=2e7):
    """Independent normalization oracle: geometric panels out to y_max."""
    edges = np.geomspace(1e-8, y_max, 70)
    pieces = [(0.0, edges[0])] + list(zip(edges[:-1], edges[1:]))
    y, w = composite_pieces_rule(pieces, 32)
    vals = np.array([halfplane_kernel(t, x, yi, lam) for yi in y])
    return float(np.dot(w, vals * y ** (2 * lam)))


class TestHalfplaneKernel:
    def test_symmetry_in_x_y(self):
        for lam in (0.3, 1.0, 2.0):
            a = halfplane_kernel(0.7, 1.3, 2.1, lam)
            b = halfplane_kernel(0.7, 2.1, 1.3, lam)
            assert a == pytest.approx(b, rel=1e-13)

    def test_positive(self):
        assert halfplane_kernel(0.5, 0.0, 1.0, 0.5) > 0.0

    @pytest.mark.parametrize("lam", [0.3, 1.0, 2.0])
    def test_unit_mass(self, lam):
        """The kernel integrates to 1 against the weighted measure."""
        for t, x in ((0.5, 1.0), (2.0, 0.0)):
            assert abs(_kernel_mass(t, x, lam) - 1.0) < 1e-6

    def test_explicit_rule_accepted(self):
        rule = sine_weighted_rule(64, 1.0)
        a = halfplane_kernel(0.5, 1.0, 1.2, 1.0, rule=rule)
        b = halfplane_kernel(0.5, 1.0, 1.2, 1.0)
        assert a == pytest.approx(b, rel=1e-10)

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            halfplane_kernel(0.0, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            halfplane_kernel(1.0, 1.0, 0.0, 1.0)


class TestPoissonExtension:
    def test_conserves_constants(self):
        f = constant(1.0, (1e-4, 5e4), n_breaks=60)
        u = poisson_values(f, np.array([0.3, 1.0]), np.array([0.8, 2.0]), 1.0, n_y=32)
        assert np.max(np.abs(u - 1.0)) < 1e-4

    def test_indicator_small_time_limit(self):
        """At a continuity point inside the support the extension tends to
        the boundary value; outside it tends to zero."""
        f = indicator(1.0, 2.0)
        inside = [
            float(poisson_values(f, np.array([t]), np.array([1.5]), 1.0))
            for t in (0.08, 0.02)
        ]
        errs = [abs(1.0 - v) for v in inside]
        assert errs[1] < errs[0] < 0.25
        assert errs[1] < 0.07
        outside = float(poisson_values(f, np.array([0.02]), np.array([3.0]), 1.0))
        assert outside < 0.02

    def test_semigroup_law(self):
        """Extending to s1 + s2 matches re-extending the slice at s1."""
        lam, s1, s2 = 1.0, 1.0, 0.5
        f = tent(1.0, 3.0)
        y1 = np.concatenate(
            [
                np.linspace(1e-3, 0.5, 120, endpoint=False),
                np.linspace(0.5, 4.5, 1400, endpoint=False),
                np.geomspace(4.5, 30.0, 420),
            ]
        )
        slice_vals = poisson_values(f, np.full(y1.shape, s1), y1, lam)
        slice_f = from_profile(y1, slice_vals)
        x_probe = np.array([1.2, 2.0, 2.9])
        direct = poisson_values(f, np.full(3, s1 + s2), x_probe, lam, n_y=96)
        two_stage = poisson_values(slice_f, np.full(3, s2), x_probe, lam, n_y=4)
        assert np.max(np.abs(direct - two_stage)) < 1e-6

    def test_t_shift_covariance(self):
        """The extension has no preferred t-origin: a t value produces a
        bit-identical row whichever lattice it belongs to, once the
        quadrature rule is pinned."""
        f = tent(1.0, 3.0)
        rule = sine_weighted_rule(64, 1.0)
        x = np.linspace(1.0, 2.0, 7)
        g1 = poisson_extend(f, np.array([0.4, 0.7, 1.0]), x, 1.0, rule=rule)
        g2 = poisson_extend(f, np.array([0.25, 0.7, 1.3]), x, 1.0, rule=rule)
        assert np.array_equal(g1.values[1], g2.values[1])

    def test_scaling_exact(self):
        f = tent(1.0, 3.0)
        t = np.array([0.5])
        x = np.array([1.7])
        base = poisson_values(f, t, x, 1.0)
        scaled = poisson_values(f.scaled(3.0), t, x, 1.0)
        assert scaled[0] == 3.0 * base[0]

    def test_rejects_bad_nodes(self):
        f = indicator(1.0, 2.0)
        with pytest.raises(ValueError):
            poisson_extend(f, np.array([0.0, 1.0]), np.array([1.0, 2.0]), 1.0)


class TestDiskKernel:
    def test_positivity_lattice(self):
        th = np.linspace(0.05, math.pi - 0.05, 9)
        for s in (0.3, 0.9):
            for a in th:
                for b in th:
                    assert disk_kernel(s, a, b, 0.7) > 0.0

    def test_normalization_constant_is_one(self):
        const, dev = calibrate_disk_kernel(1.0)
        assert const == pytest.approx(1.0, abs=1e-8)
        assert dev < 1e-6

    @pytest.mark.parametrize("lam", [0.3, 2.0])
    def test_normalization_probe_independent(self, lam):
        const, dev = calibrate_disk_kernel(lam, s_probes=(0.3, 0.7), n_phi=128)
        assert dev < 1e-6

    def test_radius_ratio_validated(self):
        with pytest.raises(ValueError):
            disk_kernel(1.0, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            disk_extend(lambda p: np.ones_like(p), 2.0, 1.0, 0.5, 1.0)

    def test_constant_boundary_reproduced(self):
        got = disk_extend(lambda p: np.full_like(p, 2.5), 0.4, 1.0, 1.1, 0.7)
        assert got == pytest.approx(2.5, rel=1e-9)

    @pytest.mark.parametrize("lam", [0.3, 1.0, 2.0])
    def test_quadratic_polynomial_reproduced(self, lam):
        fld = harmonic_quadratic(lam)
        r = 1.3
        bv = lambda p: fld(r * np.cos(p), r * np.sin(p))
        for rho, th in ((0.3, 0.7), (0.9, 2.3), (0.65, 1.5707)):
            got = disk_extend(bv, rho, r, th, lam)
            want = float(fld(rho * math.cos(th), rho * math.sin(th)))
            assert got == pytest.approx(want, abs=1e-6 * max(1.0, abs(want)))

    def test_maximum_principle(self):
        """Interior value stays within the boundary range."""
        lam, r = 1.0, 1.0
        bv = lambda p: np.cos(3.0 * p) + 1.5
        vals = [
            disk_extend(bv, rho, r, th, lam)
            for rho in (0.2, 0.6, 0.85)
            for th in (0.5, 1.5, 2.6)
        ]
        assert all(0.5 - 1e-8 <= v <= 2.5 + 1e-8 for v in vals)

    def test_consistency_with_halfplane_pipeline(self):
        """Sampling a semigroup extension on a half-circle and applying the
        disk representation reproduces interior values."""
        lam = 1.0
        f = tent(1.0, 3.0)
        t_c, r = 1.2, 0.8

        def bv(phi):
            return poisson_values(
                f, t_c + r * np.cos(phi), r * np.sin(phi), lam, n_y=96
            )

        for rho, th in ((0.3, 1.2), (0.5, 2.0)):
            got = disk_extend(bv, rho, r, th, lam)
            want = float(
                poisson_values(
                    f,
                    np.array([t_c + rho * math.cos(th)]),
                    np.array([rho * math.sin(th)]),
                    lam,
                    n_y=96,
                )
            )
            assert got == pytest.approx(want, abs=1e-5)


class TestResidual:
    def _grid(self, field, lam, n=41):
        t = np.linspace(0.5, 1.5, n)
        x = np.linspace(1.0, 2.0, n)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return HarmonicGrid(t, x, field(tt, xx), lam)

    def test_linear_exact(self):
        g = self._grid(linear_t(), 0.7)
        assert np.max(np.abs(residual_bessel_laplace(g))) < 1e-12

    @pytest.mark.parametrize("lam", [0.3, 1.0, 2.0])
    def test_quadratic_exact(self, lam):
        g = self._grid(harmonic_quadratic(lam), lam)
        assert np.max(np.abs(residual_bessel_laplace(g))) < 1e-10

    @pytest.mark.parametrize("lam", [0.3, 1.0, 2.0])
    def test_cubic_exact(self, lam):
        """Symmetric differences annihilate the truncation term of this
        cubic solution."""
        g = self._grid(harmonic_cubic(lam), lam)
        assert np.max(np.abs(residual_bessel_laplace(g))) < 1e-10

    def test_extension_refinement_order(self):
        """One family member: dyadic refinement shows order close to 2."""
        f = tent(1.0, 3.0)
        raws = []
        for n in (33, 65, 129):
            t = np.linspace(0.7, 1.5, n)
            x = np.linspace(1.0, 2.6, 2 * n - 1)
            g = poisson_extend(f, t, x, 1.0, n_y=64, n_beta=64)
            raws.append(residual_stats(g)["max_raw"])
        orders = [math.log2(a / b) for a, b in zip(raws[:-1], raws[1:])]
        assert all(o >= 1.8 for o in orders)

    def test_needs_uniform_grid(self):
        t = np.array([0.5, 0.7, 1.0])
        x = np.linspace(1.0, 2.0, 3)
        g = HarmonicGrid(t, x, np.zeros((3, 3)), 1.0)
        with pytest.raises(ValueError):
            residual_bessel_laplace(g)


class TestConjugate:
    def _extension(self, lam=1.0, h=0.1):
        f = tent(1.0, 2.0)
        t = np.arange(0.2, 14.0 + h / 2, h)
        x = np.linspace(0.8, 2.6, 46)
        return poisson_extend(f, t, x, lam, n_y=64, n_beta=64)

    def test_constant_gives_zero(self):
        t = np.linspace(0.2, 2.0, 10)
        x = np.linspace(1.0, 2.0, 8)
        g = HarmonicGrid(t, x, np.full((10, 8), 4.0), 1.0)
        v = conjugate_via_cr(g, tol=10.0)  # constants never decay
        assert np.all(v.values == 0.0)

    def test_first_equation_holds_by_construction(self):
        g = self._extension()
        v = conjugate_via_cr(g, tol=5e-3)
        assert first_cr_residual(g, v) < 1e-8

    def test_second_equation_refines(self):
        """The nontrivial companion equation residual drops with the lattice."""
        res = []
        for h in (0.2, 0.1, 0.05):
            g = self._extension(h=h)
            v = conjugate_via_cr(g, tol=5e-3)
            r = second_cr_residual(g, v)
            # stay away from the top rows where the truncation tail lives
            res.append(float(np.max(np.abs(r[: r.shape[0] // 2, :]))))
        assert res[2] < res[1] < res[0]
        assert res[2] < 0.6 * res[0]

    def test_insufficient_decay_flagged(self):
        f = tent(1.0, 2.0)
        t = np.linspace(0.2, 1.0, 9)
        x = np.linspace(0.8, 2.6, 11)
        g = poisson_extend(f, t, x, 1.0)
        with pytest.raises(ValueError):
            conjugate_via_cr(g, tol=1e-6)


class TestSerialization:
    def _grid(self):
        t = np.linspace(0.5, 1.0, 4)
        x = np.linspace(1.0, 2.0, 5)
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return HarmonicGrid(t, x, (1.0 + tt) * xx, 0.7, provenance="analytic")

    def test_csv_round_trip(self, tmp_path):
        g = self._grid()
        path = tmp_path / "u.csv"
        g.to_csv(path)
        back = HarmonicGrid.from_csv(path)
        assert back.lam == g.lam
        assert back.provenance == g.provenance
        assert np.array_equal(back.values, g.values)
        assert np.array_equal(back.t_nodes, g.t_nodes)

    def test_json_round_trip(self, tmp_path):
        g = self._grid()
        path = tmp_path / "u.json"
        g.to_json(path)
        back = HarmonicGrid.from_json(path)
        assert back.lam == g.lam
        assert np.array_equal(back.values, g.values)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            HarmonicGrid(np.array([1.0, 2.0]), np.array([1.0]), np.zeros((2, 2)), 1.0)
