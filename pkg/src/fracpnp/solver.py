"""Time integration of the coupled drift-diffusion system.

The two densities diffuse under fractional Laplacians of orders alpha and
beta and are advected by the self-consistent field grad(psi), Delta psi = u - v.
The diffusion is diagonal in Fourier space and integrated exactly; the drift
coupling is explicit with 2/3-rule dealiasing on every quadratic product
(second-order exponential time differencing).

Positivity is monitored, never enforced: clipping would silently break mass
conservation and the monotone functionals the harness is meant to test.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

import numpy as np

from .errors import ContractViolationError, NumericalFailureError
from .spectral import (
    FracExponents,
    GridSpec,
    RealField,
    dealias_mask,
    derivative_mesh,
    inv_laplacian,
    inverse_k2,
    wavenumber_norm,
)

PHI_SERIES_CUT = 1e-4


@dataclass(frozen=True)
class SolverParams:
    """Step size, dealiasing, and monitor tolerances for one run."""

    exps: FracExponents
    dt: float
    t_end: float
    dealias_fraction: float = 2.0 / 3.0
    output_stride: int = 10
    checkpoint_stride: int = 0  # output strides between checkpoints; 0 = endpoints only
    pos_tol: float = 1e-8
    tail_tol: float = 1e-6
    boundary_tol: float = 1e-6
    cfl: float = 0.5

    def __post_init__(self):
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ContractViolationError(f"dt must be positive, got {self.dt}")
        if not (self.t_end > 0):
            raise ContractViolationError(f"t_end must be positive, got {self.t_end}")
        if not (0.0 < self.dealias_fraction <= 1.0):
            raise ContractViolationError("dealias_fraction must lie in (0, 1]")
        if self.output_stride < 1:
            raise ContractViolationError("output_stride must be >= 1")
        for name in ("pos_tol", "tail_tol", "boundary_tol", "cfl"):
            if getattr(self, name) <= 0:
                raise ContractViolationError(f"{name} must be positive")


@dataclass(frozen=True)
class SimState:
    """The evolving pair (u, v) and the recomputed potential at time t."""

    t: float
    u: RealField
    v: RealField
    psi: RealField


def make_state(t: float, u: RealField, v: RealField) -> SimState:
    if u.grid != v.grid:
        raise ContractViolationError("u and v live on different grids")
    charge = RealField(u.grid, u.values - v.values)
    return SimState(t=t, u=u, v=v, psi=inv_laplacian(charge))


@dataclass(frozen=True)
class Bump:
    """One radial Gaussian component amplitude * exp(-|x - center|^2 / width^2)."""

    amplitude: float
    center: tuple
    width: float

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ContractViolationError("bump amplitude must be positive")
        if self.width <= 0:
            raise ContractViolationError("bump width must be positive")


@dataclass(frozen=True)
class InitialData:
    """Nonnegative, spectrally resolved initial densities.

    gaussian_mixture uses the explicit component lists; band_limited_positive
    draws `modes` random low modes per species with total ripple below
    `ripple` around the given baselines, so positivity is guaranteed.
    """

    family: str = "gaussian_mixture"
    u_components: tuple = ()
    v_components: tuple = ()
    seed: int = 0
    baseline_u: float = 1.0
    baseline_v: float = 1.0
    modes: int = 4
    max_mode: int = 4
    ripple: float = 0.5

    def __post_init__(self):
        if self.family not in ("gaussian_mixture", "band_limited_positive"):
            raise ContractViolationError(f"unknown initial data family {self.family!r}")
        if self.family == "band_limited_positive":
            if not (0 <= self.ripple < 1):
                raise ContractViolationError("ripple budget must lie in [0, 1)")
            if self.modes < 1 or self.max_mode < 1:
                raise ContractViolationError("band-limited family needs modes, max_mode >= 1")

    def build(self, grid: GridSpec, tail_tol: float = 1e-6):
        if self.family == "gaussian_mixture":
            u = _mixture_field(grid, self.u_components)
            v = _mixture_field(grid, self.v_components)
        else:
            # splitting rule (seed, SUITE_KEYS["init"], 0); see inequalities.member_rng
            rng = np.random.default_rng(np.random.SeedSequence((int(self.seed), 7, 0)))
            u = _band_limited_field(grid, rng, self.baseline_u, self.modes, self.max_mode, self.ripple)
            v = _band_limited_field(grid, rng, self.baseline_v, self.modes, self.max_mode, self.ripple)
        for name, f in (("u0", u), ("v0", v)):
            if np.min(f.values) < 0:
                raise ContractViolationError(f"{name} is not nonnegative")
            tail = spectral_tail_fraction(f)
            if tail > tail_tol:
                raise ContractViolationError(
                    f"{name} is under-resolved: spectral tail fraction {tail:.3e} > {tail_tol:.1e}"
                )
        return u, v


def _mixture_field(grid, components):
    if not components:
        raise ContractViolationError("gaussian_mixture needs at least one component per species")
    mesh = grid.meshgrid()
    vals = np.zeros(grid.shape)
    for bump in components:
        center = tuple(bump.center)
        if len(center) != grid.d:
            raise ContractViolationError(
                f"bump center {center} has wrong dimension for d={grid.d}"
            )
        r2 = np.zeros(grid.shape)
        for x, c in zip(mesh, center):
            r2 = r2 + (x - c) ** 2
        vals += bump.amplitude * np.exp(-r2 / bump.width**2)
    return RealField(grid, vals)


def _band_limited_field(grid, rng, baseline, modes, max_mode, ripple):
    mesh = grid.meshgrid()
    scale = np.pi / grid.half_length
    vals = np.ones(grid.shape)
    amps = rng.uniform(0.2, 1.0, size=modes)
    amps *= ripple / np.sum(amps)
    for amp in amps:
        mvec = rng.integers(-max_mode, max_mode + 1, size=grid.d)
        if not np.any(mvec):
            mvec[rng.integers(grid.d)] = 1
        phase = rng.uniform(0.0, 2.0 * np.pi)
        arg = phase * np.ones(grid.shape)
        for x, m in zip(mesh, mvec):
            arg = arg + scale * m * x
        vals += amp * np.cos(arg)
    return RealField(grid, baseline * vals)


# ---------------------------------------------------------------------------
# monitors


def spectral_tail_fraction(f: RealField) -> float:
    """Energy share of modes with |m_j| >= 7n/16 on some axis."""
    grid = f.grid
    coeffs = np.fft.fftn(f.values) / grid.size
    total = float(np.sum(np.abs(coeffs) ** 2))
    if total == 0:
        return 0.0
    inner = dealias_mask(grid, 7.0 / 8.0)
    tail = float(np.sum(np.abs(coeffs[~inner]) ** 2))
    return tail / total


def boundary_mass_fraction(f: RealField) -> float:
    """Max |density| on the outermost shell over the global max |density|."""
    peak = float(np.max(np.abs(f.values)))
    if peak == 0:
        return 0.0
    shell = 0.0
    for axis in range(f.grid.d):
        for idx in (0, -1):
            face = np.take(f.values, idx, axis=axis)
            shell = max(shell, float(np.max(np.abs(face))))
    return shell / peak


# ---------------------------------------------------------------------------
# ETDRK2 stepper


def _phi1(z):
    out = np.empty_like(z)
    small = np.abs(z) < PHI_SERIES_CUT
    zs = z[small]
    out[small] = 1.0 + zs / 2.0 + zs**2 / 6.0 + zs**3 / 24.0
    zb = z[~small]
    out[~small] = np.expm1(zb) / zb
    return out


def _phi2(z):
    out = np.empty_like(z)
    small = np.abs(z) < PHI_SERIES_CUT
    zs = z[small]
    out[small] = 0.5 + zs / 6.0 + zs**2 / 24.0 + zs**3 / 120.0
    zb = z[~small]
    out[~small] = (np.expm1(zb) - zb) / zb**2
    return out


class EtdStepper:
    """Precomputed multipliers for one (grid, exponents, dt) combination.

    Works on normalized coefficient arrays (coeff(0) = mean); the nonlinear
    terms are formed as physical-space products with dealiasing on every
    input and on the result, and their zero mode is pinned to exactly zero so
    the divergence structure conserves mass bit for bit.
    """

    def __init__(self, grid: GridSpec, exps: FracExponents, dt: float,
                 dealias_fraction: float = 2.0 / 3.0):
        self.grid = grid
        self.dt = dt
        self.nmodes = grid.size
        kn = wavenumber_norm(grid)
        self.mask = dealias_mask(grid, dealias_fraction)
        self.kd = derivative_mesh(grid)
        self.neg_inv_k2 = -inverse_k2(grid)
        self.mult = {}
        for tag, a in (("u", exps.alpha), ("v", exps.beta)):
            z = -dt * kn**a
            self.mult[tag] = (np.exp(z), _phi1(z), _phi2(z))

    def potential_hat(self, u_hat, v_hat):
        return (u_hat - v_hat) * self.neg_inv_k2

    def _to_phys(self, hat):
        return np.fft.ifftn(hat * self.nmodes).real

    def nonlinear_hats(self, u_hat, v_hat):
        """Dealiased transforms of -div(u grad psi) and +div(v grad psi)."""
        psi_hat = self.potential_hat(u_hat, v_hat)
        grad_psi = [self._to_phys(1j * kj * psi_hat * self.mask) for kj in self.kd]
        u_phys = self._to_phys(u_hat * self.mask)
        v_phys = self._to_phys(v_hat * self.mask)
        nu = np.zeros(self.grid.shape, dtype=np.complex128)
        nv = np.zeros(self.grid.shape, dtype=np.complex128)
        for kj, gj in zip(self.kd, grad_psi):
            flux_u = np.fft.fftn(u_phys * gj) / self.nmodes
            flux_v = np.fft.fftn(v_phys * gj) / self.nmodes
            nu -= 1j * kj * (flux_u * self.mask)
            nv += 1j * kj * (flux_v * self.mask)
        nu.flat[0] = 0.0
        nv.flat[0] = 0.0
        return nu, nv

    def advance(self, u_hat, v_hat):
        """One ETDRK2 step: exact diffusion, predictor-corrector drift."""
        eu, p1u, p2u = self.mult["u"]
        ev, p1v, p2v = self.mult["v"]
        nu, nv = self.nonlinear_hats(u_hat, v_hat)
        au = eu * u_hat + self.dt * p1u * nu
        av = ev * v_hat + self.dt * p1v * nv
        nau, nav = self.nonlinear_hats(au, av)
        u_next = au + self.dt * p2u * (nau - nu)
        v_next = av + self.dt * p2v * (nav - nv)
        return u_next, v_next


def nonlinear_rhs(state: SimState, dealias_fraction: float = 2.0 / 3.0):
    """Drift terms (-div(u grad psi), +div(v grad psi)) as physical fields."""
    grid = state.u.grid
    stepper = EtdStepper(grid, FracExponents(1.0, 1.0), 1.0, dealias_fraction)
    u_hat = np.fft.fftn(state.u.values) / grid.size
    v_hat = np.fft.fftn(state.v.values) / grid.size
    nu, nv = stepper.nonlinear_hats(u_hat, v_hat)
    return (
        RealField(grid, np.fft.ifftn(nu * grid.size).real),
        RealField(grid, np.fft.ifftn(nv * grid.size).real),
    )


def step(state: SimState, params: SolverParams) -> SimState:
    """Advance one time step and return the new state with psi recomputed."""
    grid = state.u.grid
    stepper = EtdStepper(grid, params.exps, params.dt, params.dealias_fraction)
    u_hat = np.fft.fftn(state.u.values) / grid.size
    v_hat = np.fft.fftn(state.v.values) / grid.size
    u_hat, v_hat = stepper.advance(u_hat, v_hat)
    u = np.fft.ifftn(u_hat * grid.size).real
    v = np.fft.ifftn(v_hat * grid.size).real
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise NumericalFailureError(
            "blow-up or instability detected", last_good_time=state.t
        )
    return make_state(state.t + params.dt, RealField(grid, u), RealField(grid, v))


@dataclass
class SimResult:
    """Everything simulate produces besides the on-disk artifacts."""

    series: "NormSeries"
    checkpoints: list
    initial: SimState
    final: SimState
    saturation_cut: float
    monitors: dict


def simulate(init: InitialData, grid: GridSpec, params: SolverParams,
             diagnostics_spec=None) -> SimResult:
    """Advance the system to t_end, recording norm rows every output stride.

    Aborts with NumericalFailureError on NaN/Inf, positivity loss beyond
    pos_tol, spectral-tail blowup, or boundary saturation of the box.
    """
    from .diagnostics import DiagnosticsSpec, RowRecorder

    if diagnostics_spec is None:
        diagnostics_spec = DiagnosticsSpec()
    u0, v0 = init.build(grid, params.tail_tol)
    state0 = make_state(0.0, u0, v0)
    stepper = EtdStepper(grid, params.exps, params.dt, params.dealias_fraction)
    recorder = RowRecorder(grid, params.exps, u0, v0, diagnostics_spec)

    n_steps = int(round(params.t_end / params.dt))
    if abs(n_steps * params.dt - params.t_end) > 1e-9 * params.t_end:
        n_steps = int(np.ceil(params.t_end / params.dt - 1e-12))

    u_hat = np.fft.fftn(u0.values) / grid.size
    v_hat = np.fft.fftn(v0.values) / grid.size
    mass_u0, mass_v0 = u_hat.flat[0].real, v_hat.flat[0].real
    mean_u, mean_v = abs(mass_u0), abs(mass_v0)

    monitors = {
        "max_tail_fraction": 0.0,
        "max_boundary_fraction": 0.0,
        "min_density_u": inf,
        "min_density_v": inf,
        "mass_drift_u": 0.0,
        "mass_drift_v": 0.0,
        "max_grad_psi": 0.0,
        "neutral_discrepancy": float((mass_u0 - mass_v0) * grid.volume),
    }
    checkpoints = [state0]
    saturation_cut = inf
    last_good = 0.0

    def record(step_index):
        nonlocal saturation_cut, last_good
        t = step_index * params.dt
        if not (np.all(np.isfinite(u_hat)) and np.all(np.isfinite(v_hat))):
            raise NumericalFailureError(
                "blow-up or instability detected", last_good_time=last_good
            )
        u = np.fft.ifftn(u_hat * grid.size).real
        v = np.fft.ifftn(v_hat * grid.size).real
        row, extras = recorder.row(t, u_hat, v_hat, u, v)
        sup_u, sup_v = extras["sup_u"], extras["sup_v"]
        for name, vals, sup in (("u", u, sup_u), ("v", v, sup_v)):
            mn = float(np.min(vals))
            monitors[f"min_density_{name}"] = min(monitors[f"min_density_{name}"], mn)
            if mn < -params.pos_tol * max(sup, 1e-300):
                raise NumericalFailureError(
                    f"positivity violation in {name}: min {mn:.3e} at t={t:g}",
                    last_good_time=last_good,
                )
        tail = max(extras["tail_u"], extras["tail_v"])
        boundary = max(extras["boundary_u"], extras["boundary_v"])
        monitors["max_tail_fraction"] = max(monitors["max_tail_fraction"], tail)
        monitors["max_boundary_fraction"] = max(monitors["max_boundary_fraction"], boundary)
        monitors["max_grad_psi"] = max(monitors["max_grad_psi"], extras["grad_psi"])
        if tail > params.tail_tol:
            raise NumericalFailureError(
                f"spectral tail fraction {tail:.3e} exceeds {params.tail_tol:.1e} at t={t:g}",
                last_good_time=last_good,
            )
        if boundary > params.boundary_tol:
            raise NumericalFailureError(
                f"domain saturation: increase L (boundary fraction {boundary:.3e} at t={t:g})",
                last_good_time=last_good,
            )
        drift_u = abs(u_hat.flat[0].real - mass_u0) / max(abs(mass_u0), 1e-300)
        drift_v = abs(v_hat.flat[0].real - mass_v0) / max(abs(mass_v0), 1e-300)
        monitors["mass_drift_u"] = max(monitors["mass_drift_u"], drift_u)
        monitors["mass_drift_v"] = max(monitors["mass_drift_v"], drift_v)
        bound = params.cfl * grid.spacing / max(1.0, extras["grad_psi"])
        if params.dt > bound:
            raise NumericalFailureError(
                f"time step {params.dt:g} exceeds advective stability bound {bound:.3e} at t={t:g}",
                last_good_time=last_good,
            )
        saturated = (mean_u > 0 and sup_u <= 10.0 * mean_u) or (
            mean_v > 0 and sup_v <= 10.0 * mean_v
        )
        if saturation_cut == inf and saturated:
            saturation_cut = t
        last_good = t
        return u, v

    record(0)
    stride_count = 0
    for s in range(1, n_steps + 1):
        u_hat, v_hat = stepper.advance(u_hat, v_hat)
        if s % params.output_stride == 0 or s == n_steps:
            u, v = record(s)
            stride_count += 1
            if params.checkpoint_stride and stride_count % params.checkpoint_stride == 0 and s != n_steps:
                checkpoints.append(
                    make_state(s * params.dt, RealField(grid, u), RealField(grid, v))
                )
    final = make_state(n_steps * params.dt, RealField(grid, u), RealField(grid, v))
    checkpoints.append(final)
    return SimResult(
        series=recorder.finish(),
        checkpoints=checkpoints,
        initial=state0,
        final=final,
        saturation_cut=saturation_cut,
        monitors=monitors,
    )
