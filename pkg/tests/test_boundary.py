"""Boundary data construction, interpolation, and scaling."""

import numpy as np
import pytest

from bessel_lab.boundary import (
    BoundaryFunction,
    constant,
    from_profile,
    gaussian_bump,
    indicator,
    standard_family,
    sum_boundary,
    tent,
)


class TestConstruction:
    def test_indicator(self):
        f = indicator(1.0, 2.0)
        vals = f(np.array([0.5, 1.5, 2.5]))
        assert list(vals) == [0.0, 1.0, 0.0]

    def test_tent_peak_and_kink(self):
        f = tent(1.0, 3.0)
        assert f(np.array([2.0]))[0] == 1.0
        assert f(np.array([1.5]))[0] == pytest.approx(0.5)
        assert 2.0 in dict.fromkeys(f.breakpoints)

    def test_bump_vanishes_at_cut(self):
        f = gaussian_bump(2.0, 0.3)
        a, b = f.support()
        assert abs(f(np.array([a]))[0]) < 1e-15
        assert abs(f(np.array([b]))[0]) < 1e-15
        assert f(np.array([2.0]))[0] == pytest.approx(1.0 - np.exp(-4.5))

    def test_sampled_interpolates(self):
        f = from_profile(np.array([1.0, 2.0, 3.0]), np.array([0.0, 4.0, 0.0]))
        assert f(np.array([1.5]))[0] == pytest.approx(2.0)
        assert f(np.array([0.5]))[0] == 0.0

    def test_sampled_validation(self):
        with pytest.raises(ValueError):
            from_profile(np.array([1.0, 1.0]), np.array([0.0, 1.0]))
        with pytest.raises(ValueError):
            BoundaryFunction(kind="sampled", domain=(0.0, 1.0))

    def test_bad_domain(self):
        with pytest.raises(ValueError):
            indicator(2.0, 1.0)


class TestStructure:
    def test_pieces_split_at_breakpoints(self):
        f = tent(1.0, 3.0)
        assert f.pieces() == [(1.0, 2.0), (2.0, 3.0)]

    def test_constant_geometric_breaks(self):
        f = constant(1.0, (0.01, 100.0), n_breaks=5)
        assert len(f.pieces()) == 6

    def test_scaled_shares_base(self):
        f = indicator(1.0, 2.0)
        g = f.scaled(3.0)
        x = np.array([1.5])
        assert g(x)[0] == 3.0 * f(x)[0]
        assert np.array_equal(g.base_values(x), f.base_values(x))

    def test_sum(self):
        f = sum_boundary(indicator(1.0, 2.0), tent(1.5, 3.5))
        assert f.support() == (1.0, 3.5)
        assert f(np.array([1.75]))[0] == pytest.approx(1.0 + 0.25)

    def test_standard_family_members(self):
        fam = standard_family()
        assert set(fam) == {"indicator", "tent", "bump", "near_axis"}
        assert fam["near_axis"].support() == (0.1, 0.4)
