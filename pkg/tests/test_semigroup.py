"""Fractional heat propagator: exactness, smoothing, and decay-rate fits."""

import numpy as np
import pytest
from scipy.special import erfcx

from fracpnp import (
    ContractViolationError,
    GridSpec,
    RealField,
    SaturationWindowError,
    UnfittableSeriesError,
    forward,
    geometric_times,
    heat_propagate,
    hypercontractivity_probe,
    norm_lp,
    semigroup_linf_decay_check,
)


def gaussian_field(n, half_length, width=1.0, amp=1.0):
    g = GridSpec(1, n, half_length)
    return RealField(g, amp * np.exp(-(g.axis() / width) ** 2))


class TestPropagator:
    def test_eigenmode(self):
        g = GridSpec(1, 64, np.pi)
        x = g.axis()
        out = heat_propagate(RealField(g, np.cos(2 * x)), 1.0, 1.0)
        np.testing.assert_allclose(out.values, np.exp(-2.0) * np.cos(2 * x), atol=1e-14)

    def test_time_zero_is_identity(self):
        f = gaussian_field(256, 20.0)
        out = heat_propagate(f, 1.5, 0.0)
        np.testing.assert_allclose(out.values, f.values, atol=1e-14)

    def test_negative_time_rejected(self):
        with pytest.raises(ContractViolationError):
            heat_propagate(gaussian_field(64, 10.0), 1.0, -0.1)

    def test_order_out_of_range_rejected(self):
        with pytest.raises(ContractViolationError):
            heat_propagate(gaussian_field(64, 10.0), 2.5, 1.0)

    def test_classical_limit_matches_heat_kernel(self):
        # exp(-t Lambda^2) of exp(-x^2/w^2) is the Gaussian with w^2 -> w^2 + 4t
        w, t = 2.0, 1.5
        g = GridSpec(1, 1024, 40.0)
        x = g.axis()
        f = RealField(g, np.exp(-(x / w) ** 2))
        out = heat_propagate(f, 2.0, t)
        wt2 = w**2 + 4 * t
        exact = w / np.sqrt(wt2) * np.exp(-(x**2) / wt2)
        assert np.max(np.abs(out.values - exact)) < 1e-8 * np.max(exact)

    def test_semigroup_property(self):
        f = gaussian_field(512, 30.0)
        one = heat_propagate(heat_propagate(f, 1.3, 0.7), 1.3, 0.5)
        both = heat_propagate(f, 1.3, 1.2)
        assert np.max(np.abs(one.values - both.values)) < 1e-12

    def test_mass_invariance(self):
        # the symbol leaves the zero mode untouched exactly; a physical-space
        # round trip adds at most an ulp
        from fracpnp.semigroup import propagator_symbol
        f = gaussian_field(512, 30.0)
        for t in (0.0, 0.5, 10.0, 1e4):
            assert propagator_symbol(f.grid, 0.8, t).flat[0] == 1.0
        before = forward(f).coeffs[0].real
        after = forward(heat_propagate(f, 0.8, 3.0)).coeffs[0].real
        assert after == pytest.approx(before, rel=1e-14)

    def test_positivity_preserved_on_resolved_data(self):
        f = gaussian_field(1024, 50.0)
        for a in (0.5, 1.0, 1.5, 2.0):
            out = heat_propagate(f, a, 2.0)
            assert np.min(out.values) >= -1e-8 * np.max(out.values)

    def test_l2_monotone(self):
        rng = np.random.default_rng(8)
        g = GridSpec(1, 128, np.pi)
        f = RealField(g, rng.standard_normal(g.shape))
        norms = [norm_lp(heat_propagate(f, 1.2, t), 2) for t in (0.0, 0.1, 0.5, 1.0, 3.0)]
        assert all(b <= a * (1 + 1e-13) for a, b in zip(norms, norms[1:]))


class TestHypercontractivity:
    def test_gaussian_classical_order(self):
        # closed form: ||u(t)||_2 = (pi/(8t+2))^{1/4} for exp(-x^2) under a=2
        f = gaussian_field(32768, 1000.0)
        t_grid = geometric_times(1.0, 50.0, 20)
        ratios = np.array([r for _, r in hypercontractivity_probe(f, 2.0, t_grid)])
        oracle = np.array([(np.pi * t / (8 * t + 2)) ** 0.25 / np.sqrt(np.pi) for t in t_grid])
        np.testing.assert_allclose(ratios, oracle, rtol=1e-10)
        assert ratios.max() / ratios.min() < 1.06
        assert ratios[-1] == pytest.approx((8 * np.pi) ** -0.25, rel=1e-2)

    def test_gaussian_poisson_order(self):
        # ||u(t)||_2^2 = sqrt(pi/2) erfcx(sqrt(2) t) for exp(-x^2) under a=1
        f = gaussian_field(32768, 1000.0)
        t_grid = geometric_times(1.0, 50.0, 20)
        ratios = np.array([r for _, r in hypercontractivity_probe(f, 1.0, t_grid)])
        oracle = np.array(
            [np.sqrt(np.sqrt(np.pi / 2) * erfcx(np.sqrt(2) * t) * t) / np.sqrt(np.pi)
             for t in t_grid]
        )
        np.testing.assert_allclose(ratios, oracle, rtol=2e-2)
        assert ratios.max() / ratios.min() < 1.5

    def test_zero_mean_ratio_decays(self):
        g = GridSpec(1, 4096, 100.0)
        f = RealField(g, np.cos(16 * np.pi / 100.0 * g.axis()))
        pairs = hypercontractivity_probe(f, 1.0, [1.0, 5.0, 20.0, 50.0])
        ratios = [r for _, r in pairs]
        assert ratios[-1] < 1e-6 * ratios[0]

    def test_zero_mass_rejected(self):
        g = GridSpec(1, 64, np.pi)
        with pytest.raises(ContractViolationError):
            hypercontractivity_probe(RealField(g, np.zeros(g.shape)), 1.0, [1.0])

    def test_saturated_time_rejected(self):
        f = gaussian_field(2048, 30.0)  # small box saturates early
        with pytest.raises(SaturationWindowError):
            hypercontractivity_probe(f, 1.0, [1.0, 500.0])


class TestLinfDecayCheck:
    def test_one_dimensional_rate(self):
        f = gaussian_field(16384, 200.0)
        rep = semigroup_linf_decay_check(f, 1.5, 1.0, geometric_times(1.0, 100.0, 64))
        assert rep.exponent == pytest.approx(-2.0 / 3.0, abs=0.05)
        assert rep.predicted_exponent == pytest.approx(-2.0 / 3.0)
        assert rep.r_squared > 0.999
        assert np.isfinite(rep.c_fitted)

    def test_two_dimensional_rate(self):
        g = GridSpec(2, 1024, 400.0)
        X, Y = g.meshgrid()
        f = RealField(g, np.exp(-(X**2 + Y**2) / 16.0))
        rep = semigroup_linf_decay_check(f, 1.0, 1.0, geometric_times(1.0, 100.0, 40))
        assert rep.exponent == pytest.approx(-2.0, abs=0.1)

    def test_zero_field_rejected(self):
        g = GridSpec(1, 256, 10.0)
        with pytest.raises(UnfittableSeriesError, match="degenerate series"):
            semigroup_linf_decay_check(RealField(g, np.zeros(g.shape)), 1.0, 1.0,
                                       geometric_times(1.0, 10.0, 16))

    def test_saturation_cut_reported(self):
        f = gaussian_field(16384, 200.0)
        rep = semigroup_linf_decay_check(f, 1.5, 1.0, geometric_times(1.0, 100.0, 64))
        assert 20.0 < rep.saturation_cut < 60.0
        assert rep.window[1] <= rep.saturation_cut
