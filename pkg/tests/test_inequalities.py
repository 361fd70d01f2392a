"""Quadrature oracle, kernel calibration, and the functional-inequality checks."""

import numpy as np
import pytest
from math import inf, pi, sqrt

from fracpnp import (
    ContractViolationError,
    FourierSumFunction,
    GaussianMixtureFunction,
    GridSpec,
    ModeSum,
    OracleParams,
    QuadratureFailureError,
    RealField,
    calibrate_kernel_constant,
    commutator_exact_check,
    kato_ponce_check,
    frac_lap_quadrature,
    frac_laplacian,
    extremum_lower_bound,
    run_suite,
    standard_kernel_constant,
    wiener_interp_check,
)
from fracpnp.inequalities import member_rng, _random_mixture, _random_mode_sum


def unit_gaussian(d=1):
    return GaussianMixtureFunction(d, [1.0], [np.zeros(d)], [1.0])


class TestQuadratureOracle:
    @pytest.mark.parametrize("a", [0.5, 1.0, 1.5])
    def test_cosine_eigenfunction(self, a):
        h = FourierSumFunction([(1.0, 2.0, 0.0)])
        for x in (0.0, 0.4, 1.3):
            val = frac_lap_quadrature(h, np.array([x]), a)
            exact = 2.0**a * np.cos(2 * x)
            assert val == pytest.approx(exact, abs=1e-4 * 2.0**a)

    def test_even_critical_point_finite(self):
        h = unit_gaussian()
        val = frac_lap_quadrature(h, np.array([0.0]), 1.0)
        assert np.isfinite(val)
        assert val == pytest.approx(2.0 / sqrt(pi), rel=1e-6)

    def test_matches_spectral_multiplier(self):
        g = GridSpec(1, 2**14, 200.0)
        x = g.axis()
        f = RealField(g, np.exp(-(x**2)))
        spectral = frac_laplacian(f, 1.0).values
        peak = np.max(np.abs(spectral))
        h = unit_gaussian()
        for i in (g.n // 2, g.n // 2 + 30, g.n // 2 + 120):
            q = frac_lap_quadrature(h, np.array([x[i]]), 1.0)
            assert abs(q - spectral[i]) < 1e-4 * peak

    def test_order_out_of_range(self):
        with pytest.raises(ContractViolationError):
            frac_lap_quadrature(unit_gaussian(), np.array([0.0]), 2.0)

    def test_unreachable_tolerance_fails_loudly(self):
        params = OracleParams(rel_tol=1e-16, abs_tol=1e-30)
        with pytest.raises(QuadratureFailureError):
            frac_lap_quadrature(unit_gaussian(), np.array([0.3]), 0.7, params)

    def test_two_dimensional_point(self):
        # radial Gaussian at the origin: closed multiplier value 2^a G((d+a)/2)/G(d/2)
        from math import gamma
        h = unit_gaussian(d=2)
        val = frac_lap_quadrature(h, np.zeros(2), 1.0)
        assert val == pytest.approx(2.0 * gamma(1.5) / gamma(1.0), rel=1e-6)


class TestKernelCalibration:
    def test_one_dimensional_half_laplacian(self):
        assert calibrate_kernel_constant(1.0, 1) == pytest.approx(1.0 / pi, rel=1e-6)

    def test_two_dimensional(self):
        assert calibrate_kernel_constant(1.0, 2) == pytest.approx(
            standard_kernel_constant(1.0, 2), rel=1e-6
        )

    @pytest.mark.parametrize("d,a", [(1, 0.5), (1, 1.5), (2, 0.5), (2, 1.5)])
    def test_matches_closed_form(self, d, a):
        assert calibrate_kernel_constant(a, d) == pytest.approx(
            standard_kernel_constant(a, d), rel=1e-6
        )

    @pytest.mark.parametrize("a", [2.0, 2.3, 0.0])
    def test_rejected_outside_range(self, a):
        with pytest.raises(ContractViolationError):
            calibrate_kernel_constant(a, 1)


class TestExtremumBound:
    def test_gaussian_holds(self):
        rep = extremum_lower_bound(unit_gaussian(), 1.0, 1.0)
        assert rep["holds"]
        assert rep["lhs"] == pytest.approx(2.0 / sqrt(pi), rel=1e-6)
        assert rep["lhs"] > rep["rhs"] > 0

    @pytest.mark.parametrize("lam", [0.25, 0.5, 1.0, 2.0, 4.0])
    def test_dilation_invariant_verdict(self, lam):
        # both sides scale identically, so lhs/rhs is a dilation invariant
        rep = extremum_lower_bound(unit_gaussian().dilate(lam), 1.0, 1.0)
        assert rep["holds"]
        assert rep["lhs"] / rep["rhs"] == pytest.approx(8.0 * pi, rel=1e-6)

    def test_minimum_side(self):
        h = GaussianMixtureFunction(1, [1.0, -0.8], [[0.0], [2.5]], [1.0, 0.9])
        rep = extremum_lower_bound(h, 1.0, 1.0, side="min")
        assert rep["holds"]
        assert rep["h_star"] < 0
        assert rep["lhs"] <= rep["rhs"] < 0

    def test_positive_maximum_required(self):
        h = GaussianMixtureFunction(1, [-1.0], [[0.0]], [1.0])
        with pytest.raises(ContractViolationError):
            extremum_lower_bound(h, 1.0, 1.0)

    @pytest.mark.parametrize("i", range(8))
    def test_random_mixture_corpus(self, i):
        combos = [(d, a, p) for d in (1, 2) for a in (0.5, 1.0, 1.5) for p in (1.0, 2.0)]
        d, a, p = combos[(5 * i) % len(combos)]
        h = _random_mixture(member_rng(99, "extremum", i), d)
        assert extremum_lower_bound(h, a, p)["holds"]


class TestWienerInterpolation:
    def test_single_mode_strict_slack(self):
        g = GridSpec(1, 256, pi)
        u = RealField(g, np.cos(g.axis()))
        rep = wiener_interp_check(u, 0.5)
        assert rep["holds"]
        assert rep["slack_l1"] > 2.0
        assert rep["slack_l2"] > 2.0

    def test_zero_field_rejected(self):
        g = GridSpec(1, 64, pi)
        with pytest.raises(ContractViolationError):
            wiener_interp_check(RealField(g, np.zeros(g.shape)), 1.0)

    def test_bad_delta(self):
        g = GridSpec(1, 64, pi)
        with pytest.raises(ContractViolationError):
            wiener_interp_check(RealField(g, np.ones(g.shape)), 0.0)

    @pytest.mark.parametrize("lam", [1.0, 2.0, 4.0])
    def test_dilation_invariant_slack(self, lam):
        g = GridSpec(1, 4096, 60.0 * lam)
        x = g.axis()
        u = RealField(g, np.exp(-((x / lam) ** 2)))
        rep = wiener_interp_check(u, 1.0)
        assert rep["slack_l1"] == pytest.approx(4.285982143, rel=1e-6)

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("delta", [0.5, 1.5])
    def test_random_band_limited(self, seed, delta):
        from fracpnp.inequalities import _random_band_field
        g = GridSpec(1, 256, pi)
        u = _random_band_field(member_rng(7, "wiener", seed), g)
        assert wiener_interp_check(u, delta)["holds"]


class TestCommutatorB1:
    def test_constant_multiplier_commutes(self):
        f = ModeSum.from_real_cosines(1, [(1.0, (2,))])
        g = ModeSum(1, {(0,): 1.5})
        rep = commutator_exact_check(f, g, 1.5)
        assert rep["lhs"] == 0.0
        assert rep["ratio"] == 0.0

    def test_two_mode_hand_case(self):
        # f = cos 2x, g = cos x, s = 1: four product modes, ratio sqrt(34)/6
        f = ModeSum.from_real_cosines(1, [(1.0, (2,))])
        g = ModeSum.from_real_cosines(1, [(1.0, (1,))])
        rep = commutator_exact_check(f, g, 1.0)
        assert rep["holds"]
        assert rep["ratio"] == pytest.approx(sqrt(34.0) / 6.0, rel=1e-12)
        assert rep["lhs"] == pytest.approx(sqrt(pi) * sqrt(34.0) / 2.0, rel=1e-12)

    def test_order_below_one_rejected(self):
        f = ModeSum.from_real_cosines(1, [(1.0, (2,))])
        with pytest.raises(ContractViolationError):
            commutator_exact_check(f, f, 0.5)

    @pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
    @pytest.mark.parametrize("seed", range(12))
    def test_random_spectra(self, s, seed):
        rng = member_rng(11, "commutator_exact", seed)
        f = _random_mode_sum(rng)
        g = _random_mode_sum(rng)
        rep = commutator_exact_check(f, g, s)
        assert rep["ratio"] <= 1.0 + 1e-10


class TestCommutatorB2:
    EXPS = dict(p=2.0, p1=inf, p2=2.0, p3=2.0, p4=inf)

    def test_constant_multiplier(self):
        f = ModeSum.from_real_cosines(1, [(1.0, (2,))])
        g = ModeSum(1, {(0,): 2.0})
        rep = kato_ponce_check(f, g, 1.0, 2.0, inf, 2.0, 2.0, inf)
        assert rep["ratio"] == pytest.approx(0.0, abs=1e-12)

    def test_incompatible_exponents(self):
        f = ModeSum.from_real_cosines(1, [(1.0, (2,))])
        with pytest.raises(ContractViolationError):
            kato_ponce_check(f, f, 1.0, 2.0, 4.0, 2.0, 2.0, inf)

    def test_dilation_invariance(self):
        rng = member_rng(13, "kato_ponce", 0)
        f = _random_mode_sum(rng, n_modes=8, k_max=5)
        g = _random_mode_sum(rng, n_modes=8, k_max=5)
        base = kato_ponce_check(f, g, 1.0, **self.EXPS, n=128)
        for lam in (2.0, 4.0, 8.0):
            rep = kato_ponce_check(f, g, 1.0, **self.EXPS, n=128, box_scale=lam)
            assert abs(rep["ratio"] - base["ratio"]) <= 1e-6 * max(base["ratio"], 1.0)

    def test_grid_refinement_stability(self):
        rng = member_rng(13, "kato_ponce", 1)
        f = _random_mode_sum(rng, n_modes=8, k_max=5)
        g = _random_mode_sum(rng, n_modes=8, k_max=5)
        coarse = kato_ponce_check(f, g, 2.0, **self.EXPS, n=128)["ratio"]
        fine = kato_ponce_check(f, g, 2.0, **self.EXPS, n=256)["ratio"]
        assert abs(coarse - fine) <= 0.10 * fine


class TestSuites:
    def test_deterministic(self):
        a = run_suite("wiener", seed=123)
        b = run_suite("wiener", seed=123)
        assert a == b

    def test_unknown_suite(self):
        with pytest.raises(ContractViolationError):
            run_suite("nonsense")

    def test_interpolation_suite_clean(self):
        rep = run_suite("interpolation", seed=5)
        assert rep["counterexamples"] == 0

    def test_checks_sorted(self):
        rep = run_suite("wiener", seed=1)
        ids = [c["id"] for c in rep["checks"]]
        assert ids == sorted(ids)
