"""Coupled-system integrator: structure, conservation, symmetry, accuracy."""

import numpy as np
import pytest

from fracpnp import (
    Bump,
    ContractViolationError,
    FracExponents,
    GridSpec,
    InitialData,
    NumericalFailureError,
    RealField,
    SolverParams,
    heat_propagate,
    make_state,
    nonlinear_rhs,
    simulate,
    step,
)
from fracpnp.solver import boundary_mass_fraction, spectral_tail_fraction


def small_grid():
    return GridSpec(1, 512, 50.0)


def offset_bumps():
    return InitialData(
        family="gaussian_mixture",
        u_components=(Bump(0.5, (0.0,), 4.0),),
        v_components=(Bump(0.5, (2.0,), 4.0),),
    )


def default_params(**over):
    kwargs = dict(exps=FracExponents(1.5, 1.5), dt=0.02, t_end=2.0,
                  output_stride=10, boundary_tol=0.1)
    kwargs.update(over)
    return SolverParams(**kwargs)


class TestParamsValidation:
    @pytest.mark.parametrize("field,value", [
        ("dt", 0.0), ("dt", -1.0), ("t_end", 0.0), ("dealias_fraction", 0.0),
        ("dealias_fraction", 1.5), ("output_stride", 0), ("pos_tol", 0.0),
    ])
    def test_rejects(self, field, value):
        kwargs = dict(exps=FracExponents(1.0, 1.0), dt=0.01, t_end=1.0)
        kwargs[field] = value
        with pytest.raises(ContractViolationError):
            SolverParams(**kwargs)


class TestNonlinearRhs:
    def test_neutral_configuration(self):
        g = small_grid()
        u = RealField(g, np.exp(-(g.axis() ** 2) / 16))
        state = make_state(0.0, u, u)
        nu, nv = nonlinear_rhs(state)
        assert np.max(np.abs(nu.values)) == 0.0
        assert np.max(np.abs(nv.values)) == 0.0
        assert np.max(np.abs(state.psi.values)) == 0.0

    def test_three_mode_hand_expansion(self):
        # u = 1 + eps cos x, v = 1: psi = -eps cos x, and the drift terms are
        # N_u = -eps cos x - eps^2 cos 2x, N_v = +eps cos x
        eps = 0.25
        g = GridSpec(1, 64, np.pi)
        x = g.axis()
        state = make_state(0.0, RealField(g, 1 + eps * np.cos(x)), RealField(g, np.ones(g.shape)))
        np.testing.assert_allclose(state.psi.values, -eps * np.cos(x), atol=1e-13)
        nu, nv = nonlinear_rhs(state)
        np.testing.assert_allclose(nu.values, -eps * np.cos(x) - eps**2 * np.cos(2 * x),
                                   atol=1e-10)
        np.testing.assert_allclose(nv.values, eps * np.cos(x), atol=1e-10)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_divergence_form_means_vanish(self, seed):
        init = InitialData(family="band_limited_positive", seed=seed, modes=6, max_mode=8)
        u, v = init.build(GridSpec(1, 128, np.pi))
        nu, nv = nonlinear_rhs(make_state(0.0, u, v))
        scale = max(np.max(np.abs(nu.values)), np.max(np.abs(nv.values)), 1e-300)
        assert abs(np.mean(nu.values)) < 1e-14 * scale
        assert abs(np.mean(nv.values)) < 1e-14 * scale


class TestStep:
    def test_neutral_reduces_to_semigroup(self):
        g = small_grid()
        u = RealField(g, np.exp(-(g.axis() ** 2) / 16))
        state = make_state(0.0, u, u)
        params = default_params(dt=0.05)
        for _ in range(10):
            state = step(state, params)
        exact = heat_propagate(u, 1.5, state.t)
        assert np.max(np.abs(state.u.values - exact.values)) < 1e-8
        assert np.max(np.abs(state.u.values - state.v.values)) < 1e-12

    def test_zero_data_stays_zero(self):
        g = small_grid()
        z = RealField(g, np.zeros(g.shape))
        state = step(make_state(0.0, z, z), default_params())
        assert np.max(np.abs(state.u.values)) == 0.0
        assert np.max(np.abs(state.v.values)) == 0.0

    def test_mass_coefficient_untouched(self):
        g = small_grid()
        init = offset_bumps()
        u0, v0 = init.build(g)
        state = make_state(0.0, u0, v0)
        m0 = np.mean(state.u.values)
        for _ in range(5):
            state = step(state, default_params())
        assert np.mean(state.u.values) == pytest.approx(m0, rel=1e-14)


class TestSimulate:
    def test_conservation_and_monotonicity(self):
        res = simulate(offset_bumps(), small_grid(), default_params(t_end=3.0))
        assert res.monitors["mass_drift_u"] < 1e-12
        assert res.monitors["mass_drift_v"] < 1e-12
        s = res.series
        for col in ("F_1", "F_2", "F_4", "F_inf"):
            y = s.column(col)
            assert np.all(np.diff(y) <= 1e-8 * y[:-1])

    def test_lyapunov_monotone_per_step(self):
        res = simulate(offset_bumps(), small_grid(),
                       default_params(t_end=0.5, output_stride=1))
        s = res.series
        for col in ("F_1", "F_2", "F_4", "F_inf"):
            y = s.column(col)
            assert np.all(np.diff(y) <= 1e-8 * y[:-1])

    def test_species_swap_symmetry(self):
        grid = small_grid()
        params = default_params(t_end=1.0)
        init_a = offset_bumps()
        init_b = InitialData(
            family="gaussian_mixture",
            u_components=init_a.v_components,
            v_components=init_a.u_components,
        )
        ra = simulate(init_a, grid, params)
        rb = simulate(init_b, grid, params)
        assert np.max(np.abs(ra.final.u.values - rb.final.v.values)) < 1e-10
        assert np.max(np.abs(ra.final.v.values - rb.final.u.values)) < 1e-10
        assert np.max(np.abs(ra.final.psi.values + rb.final.psi.values)) < 1e-10

    def test_self_convergence_second_order(self):
        grid = GridSpec(1, 256, 50.0)
        init = offset_bumps()

        def final_u(dt):
            params = default_params(dt=dt, t_end=1.0, output_stride=10**9)
            return simulate(init, grid, params).final.u.values

        u1, u2, u3, u4 = (final_u(dt) for dt in (0.04, 0.02, 0.01, 0.005))
        e1 = np.max(np.abs(u1 - u2))
        e2 = np.max(np.abs(u2 - u3))
        e3 = np.max(np.abs(u3 - u4))
        assert np.log2(e1 / e2) == pytest.approx(2.0, abs=0.2)
        assert np.log2(e2 / e3) == pytest.approx(2.0, abs=0.2)

    def test_cfl_violation_raises(self):
        with pytest.raises(NumericalFailureError, match="stability bound"):
            simulate(offset_bumps(), small_grid(), default_params(dt=0.2))

    def test_domain_saturation_raises(self):
        # a box barely larger than the bump: mass reaches the boundary quickly
        tight = GridSpec(1, 128, 8.0)
        init = InitialData(
            family="gaussian_mixture",
            u_components=(Bump(0.5, (0.0,), 2.0),),
            v_components=(Bump(0.25, (0.0,), 4.0),),
        )
        with pytest.raises(NumericalFailureError, match="increase L"):
            simulate(init, tight, default_params(t_end=3.0, boundary_tol=1e-6, tail_tol=1e-1))

    def test_saturation_cut_recorded(self):
        res = simulate(offset_bumps(), small_grid(), default_params(t_end=8.0))
        assert res.saturation_cut < 8.0
        t = res.series.t
        assert res.saturation_cut in t

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_blowup_reports_last_good_time(self):
        # monitors defeated on purpose so the instability runs into NaN
        grid = GridSpec(1, 256, 20.0)
        init = InitialData(
            family="gaussian_mixture",
            u_components=(Bump(8.0, (-2.0,), 2.0),),
            v_components=(Bump(8.0, (2.0,), 2.0),),
        )
        params = SolverParams(exps=FracExponents(0.5, 0.5), dt=0.5, t_end=20.0,
                              output_stride=1, boundary_tol=1.0, pos_tol=1e300,
                              tail_tol=1.0, cfl=1e300)
        with np.errstate(all="ignore"):
            with pytest.raises(NumericalFailureError, match="blow-up") as info:
                simulate(init, grid, params)
        assert info.value.last_good_time is not None


class TestInitialData:
    def test_unknown_family(self):
        with pytest.raises(ContractViolationError):
            InitialData(family="plane_waves")

    def test_center_dimension_mismatch(self):
        init = InitialData(u_components=(Bump(1.0, (0.0, 0.0), 2.0),),
                           v_components=(Bump(1.0, (0.0,), 2.0),))
        with pytest.raises(ContractViolationError):
            init.build(small_grid())

    def test_under_resolved_rejected(self):
        init = InitialData(u_components=(Bump(1.0, (0.0,), 0.05),),
                           v_components=(Bump(1.0, (0.0,), 2.0),))
        with pytest.raises(ContractViolationError, match="under-resolved"):
            init.build(small_grid())

    @pytest.mark.parametrize("seed", range(6))
    def test_band_limited_positive(self, seed):
        init = InitialData(family="band_limited_positive", seed=seed,
                           baseline_u=1.0, baseline_v=0.7, modes=5, max_mode=6, ripple=0.8)
        u0, v0 = init.build(GridSpec(1, 128, np.pi))
        assert np.min(u0.values) >= 0
        assert np.min(v0.values) >= 0
        assert spectral_tail_fraction(u0) < 1e-30

    def test_band_limited_deterministic(self):
        init = InitialData(family="band_limited_positive", seed=3)
        a0, _ = init.build(GridSpec(1, 128, np.pi))
        b0, _ = init.build(GridSpec(1, 128, np.pi))
        np.testing.assert_array_equal(a0.values, b0.values)


class TestMonitors:
    def test_boundary_fraction_of_centered_bump(self):
        g = GridSpec(1, 1024, 60.0)
        f = RealField(g, np.exp(-(g.axis() ** 2)))
        assert boundary_mass_fraction(f) < 1e-10

    def test_tail_fraction_of_band_limited(self):
        g = GridSpec(1, 128, np.pi)
        f = RealField(g, np.cos(3 * g.axis()))
        assert spectral_tail_fraction(f) < 1e-30
