"""Norm time series, decay-exponent fits, predicted rates, and monitors.

A fitted decay exponent is the OLS slope of log(value) against log(1+t); the
reference rates bound norms from above, so measured exponents are compared
against predictions as lower bounds on decay.  Fit windows exclude the early
transient and the torus saturation regime: the default window is
[t_end/8, t_cut], where t_cut is the first time a species' sup norm falls
below ten times its conserved mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf, isfinite

import numpy as np

from .errors import ContractViolationError, GridMismatchError
from .fitting import powerlaw_fit
from .semigroup import heat_propagate
from .solver import SimState, boundary_mass_fraction, spectral_tail_fraction
from .spectral import (
    FracExponents,
    GridSpec,
    RealField,
    derivative_mesh,
    gradient,
    inverse_k2,
    norm_lp,
    wavenumber_norm,
)

GAMMA_EQUALITY_TOL = 1e-12
SATURATION_FACTOR = 10.0


def _fmt(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class DiagnosticsSpec:
    """Which functionals are monitored and how fit windows default."""

    p_list: tuple = (1.0, 2.0, 4.0)
    s_list: tuple = (0.5, 1.0, 1.5, 2.0)
    window_fraction: float = 1.0 / 8.0  # fit window starts at t_end * this

    def columns(self):
        cols = ["t", "u_l1", "u_l2", "u_linf", "v_l1", "v_l2", "v_linf"]
        cols += [f"F_{_fmt(p)}" for p in self.p_list]
        cols.append("F_inf")
        cols += [f"u_hs_{_fmt(s)}" for s in self.s_list]
        cols += ["grad_psi_linf", "u_profile_l2", "v_profile_l2", "wiener_sum"]
        return tuple(cols)


class NormSeries:
    """Rows of monitored functionals; t strictly increasing, entries >= 0."""

    def __init__(self, columns, rows):
        self.columns = tuple(columns)
        data = np.asarray(rows, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(self.columns):
            raise ContractViolationError("rows do not match the column list")
        if not np.all(np.isfinite(data)):
            raise ContractViolationError("norm series contains non-finite entries")
        t = data[:, 0]
        if np.any(np.diff(t) <= 0):
            raise ContractViolationError("norm series times must be strictly increasing")
        if np.any(data < 0):
            raise ContractViolationError("norm series entries must be nonnegative")
        self.data = data

    @property
    def t(self):
        return self.data[:, 0]

    def column(self, name):
        try:
            j = self.columns.index(name)
        except ValueError:
            raise ContractViolationError(
                f"unknown column {name!r}; have {', '.join(self.columns)}"
            ) from None
        return self.data[:, j]

    def __len__(self):
        return self.data.shape[0]


class RowRecorder:
    """Accumulates NormSeries rows during a run (works on coefficient arrays)."""

    def __init__(self, grid: GridSpec, exps: FracExponents, u0: RealField,
                 v0: RealField, spec: DiagnosticsSpec):
        self.grid = grid
        self.exps = exps
        self.spec = spec
        self.columns = spec.columns()
        self.h_d = grid.spacing**grid.d
        self.volume = grid.volume
        self.kn = wavenumber_norm(grid)
        self.kd = derivative_mesh(grid)
        self.neg_inv_k2 = -inverse_k2(grid)
        self.u0_hat = np.fft.fftn(u0.values) / grid.size
        self.v0_hat = np.fft.fftn(v0.values) / grid.size
        self.hs_weights = {s: self.kn ** (2.0 * s) for s in spec.s_list}
        from .spectral import dealias_mask

        self.tail_inner = dealias_mask(grid, 7.0 / 8.0)
        self.rows = []

    def _tail(self, hat):
        total = float(np.sum(np.abs(hat) ** 2))
        if total == 0:
            return 0.0
        return float(np.sum(np.abs(hat[~self.tail_inner]) ** 2)) / total

    def _boundary(self, phys):
        peak = float(np.max(np.abs(phys)))
        if peak == 0:
            return 0.0
        shell = 0.0
        for axis in range(self.grid.d):
            for idx in (0, -1):
                shell = max(shell, float(np.max(np.abs(np.take(phys, idx, axis=axis)))))
        return shell / peak

    def row(self, t, u_hat, v_hat, u_phys, v_phys):
        grid = self.grid
        sup_u = float(np.max(np.abs(u_phys)))
        sup_v = float(np.max(np.abs(v_phys)))
        row = [t]
        for phys in (u_phys, v_phys):
            absf = np.abs(phys)
            row += [
                self.h_d * float(np.sum(absf)),
                float(np.sqrt(self.h_d * np.sum(absf**2))),
                float(np.max(absf)),
            ]
        for p in self.spec.p_list:
            row.append(
                self.h_d * float(np.sum(np.abs(u_phys) ** p) + np.sum(np.abs(v_phys) ** p))
            )
        row.append(sup_u + sup_v)
        for s in self.spec.s_list:
            w = self.hs_weights[s]
            row.append(float(np.sqrt(self.volume * np.sum(w * np.abs(u_hat) ** 2))))
        psi_hat = (u_hat - v_hat) * self.neg_inv_k2
        grad_sq = np.zeros(grid.shape)
        for kj in self.kd:
            gj = np.fft.ifftn(1j * kj * psi_hat * grid.size).real
            grad_sq += gj**2
        grad_psi = float(np.sqrt(np.max(grad_sq)))
        row.append(grad_psi)
        for hat, hat0, a in ((u_hat, self.u0_hat, self.exps.alpha),
                             (v_hat, self.v0_hat, self.exps.beta)):
            diff = hat - hat0 * np.exp(-t * self.kn**a)
            row.append(float(np.sqrt(self.volume * np.sum(np.abs(diff) ** 2))))
        row.append(float(np.sum(np.abs(u_hat)) + np.sum(np.abs(v_hat))))
        self.rows.append(row)
        extras = {
            "sup_u": sup_u,
            "sup_v": sup_v,
            "tail_u": self._tail(u_hat),
            "tail_v": self._tail(v_hat),
            "boundary_u": self._boundary(u_phys),
            "boundary_v": self._boundary(v_phys),
            "grad_psi": grad_psi,
        }
        return row, extras

    def finish(self) -> NormSeries:
        return NormSeries(self.columns, self.rows)


# ---------------------------------------------------------------------------
# functionals


def lyapunov(state: SimState, p: float) -> float:
    """||u||_p^p + ||v||_p^p, or the sum of sup norms for p = inf."""
    if p == inf:
        return norm_lp(state.u, inf) + norm_lp(state.v, inf)
    if p < 1:
        raise ContractViolationError(f"p must be >= 1 or inf, got {p}")
    return norm_lp(state.u, p) ** p + norm_lp(state.v, p) ** p


def grad_psi_inf(state: SimState) -> float:
    """Max over the grid of the Euclidean magnitude of grad psi."""
    comps = gradient(state.psi)
    mag = np.zeros(state.psi.grid.shape)
    for g in comps:
        mag += g.values**2
    return float(np.sqrt(np.max(mag)))


def profile_difference(state: SimState, u0: RealField, v0: RealField,
                       exps: FracExponents):
    """L2 distances of (u, v) from the freely propagated initial data."""
    if u0.grid != state.u.grid or v0.grid != state.v.grid:
        raise GridMismatchError("initial data grids do not match the state grid")
    du = RealField(u0.grid, state.u.values - heat_propagate(u0, exps.alpha, state.t).values)
    dv = RealField(v0.grid, state.v.values - heat_propagate(v0, exps.beta, state.t).values)
    return norm_lp(du, 2), norm_lp(dv, 2)


def resolution_monitors(state: SimState):
    """(tail_fraction, boundary_fraction), worst of the two species."""
    tail = max(spectral_tail_fraction(state.u), spectral_tail_fraction(state.v))
    boundary = max(boundary_mass_fraction(state.u), boundary_mass_fraction(state.v))
    return tail, boundary


# ---------------------------------------------------------------------------
# decay fits


@dataclass(frozen=True)
class DecayFit:
    """Power-law fit of one monitored column over a time window."""

    column: str
    window: tuple
    exponent: float
    amplitude: float
    r_squared: float
    n_samples: int

    def as_dict(self):
        return {
            "schema_version": 1,
            "column": self.column,
            "window_t0": self.window[0],
            "window_t1": self.window[1],
            "exponent": self.exponent,
            "amplitude": self.amplitude,
            "r_squared": self.r_squared,
            "n_samples": self.n_samples,
        }


def fit_decay(series: NormSeries, column: str, window=None) -> DecayFit:
    """OLS of log(value) against log(1+t) over the window (default: all rows)."""
    t = series.t
    y = series.column(column)
    if window is not None:
        t0, t1 = window
        if not t1 > t0:
            raise ContractViolationError(f"empty fit window [{t0}, {t1}]")
        mask = (t >= t0) & (t <= t1)
        t, y = t[mask], y[mask]
    slope, amplitude, r2 = powerlaw_fit(t, y)
    return DecayFit(
        column=column,
        window=(float(t[0]), float(t[-1])),
        exponent=slope,
        amplitude=amplitude,
        r_squared=r2,
        n_samples=int(t.size),
    )


def saturation_cut(series: NormSeries, volume: float) -> float:
    """First time a species' sup norm reaches 10x its conserved mean."""
    mean_u = series.column("u_l1")[0] / volume
    mean_v = series.column("v_l1")[0] / volume
    t = series.t
    sup_u = series.column("u_linf")
    sup_v = series.column("v_linf")
    hit = np.zeros(t.size, dtype=bool)
    if mean_u > 0:
        hit |= sup_u <= SATURATION_FACTOR * mean_u
    if mean_v > 0:
        hit |= sup_v <= SATURATION_FACTOR * mean_v
    if np.any(hit):
        return float(t[int(np.argmax(hit))])
    return inf


def default_fit_window(series: NormSeries, volume: float,
                       window_fraction: float = 1.0 / 8.0):
    """[t_end * fraction, saturation cut], the documented default policy."""
    t_end = float(series.t[-1])
    cut = min(saturation_cut(series, volume), t_end)
    return (t_end * window_fraction, cut)


# ---------------------------------------------------------------------------
# predicted decay rates and eligibility conditions


@dataclass(frozen=True)
class RatePrediction:
    """One predicted decay exponent with its origin tag."""

    family: str
    parameter: float | None
    exponent: float

    def __post_init__(self):
        if not isfinite(self.exponent):
            raise ContractViolationError("predicted exponent must be finite")


def predicted_exponents(d: int, exps: FracExponents, p_list=(2.0, inf),
                        s_list=(0.5, 1.0), data_regularity: float = 4.0):
    """Decay exponents asserted by the reference bounds.

    Covers the Lebesgue rates (d/M)(1 - 1/p), the low Sobolev rates
    (d/M)(1-s)/2 for s <= 1, the conditional mid rates (d/M)(2-s)/4 for
    s <= 2, the high-regularity rates (d/M)(S-r)/(2S) for data in H^S, the
    linear-profile rate (d-1)/M - 1, and the potential-gradient rate (d-1)/M.
    """
    big = exps.largest
    out = []
    for p in p_list:
        rate = d / big if p == inf else (d / big) * (1.0 - 1.0 / p)
        out.append(RatePrediction("lp_norm", None if p == inf else float(p), rate))
    for s in s_list:
        if s <= 1.0:
            out.append(RatePrediction("sobolev_low", float(s), (d / big) * (1.0 - s) / 2.0))
        if s <= 2.0:
            out.append(RatePrediction("sobolev_mid", float(s), (d / big) * (2.0 - s) / 4.0))
        if s <= data_regularity:
            out.append(
                RatePrediction(
                    "sobolev_high",
                    float(s),
                    (d / big) * (data_regularity - s) / (2.0 * data_regularity),
                )
            )
    out.append(RatePrediction("profile", None, (d - 1.0) / big - 1.0))
    out.append(RatePrediction("potential_gradient", None, (d - 1.0) / big))
    return out


@dataclass(frozen=True)
class ConditionReport:
    """Eligibility of (d, alpha, beta) for the conditional H^2 decay bound."""

    d: int
    alpha: float
    beta: float
    cond_22: bool
    cond_23: bool
    cond_24: bool
    cond_25: bool
    cond_26: bool
    gamma_value: float
    eligible: bool
    reason: str = ""

    def as_dict(self):
        return {
            "schema_version": 1,
            "d": self.d,
            "alpha": self.alpha,
            "beta": self.beta,
            "cond_22": self.cond_22,
            "cond_23": self.cond_23,
            "cond_24": self.cond_24,
            "cond_25": self.cond_25,
            "cond_26": self.cond_26,
            "gamma_value": self.gamma_value,
            "eligible": self.eligible,
            "reason": self.reason,
        }


def check_conditions(d: int, exps: FracExponents) -> ConditionReport:
    """Evaluate the five algebraic eligibility conditions on (d, alpha, beta).

    Conditions 2.5 and 2.6 are only required when the interpolation exponent
    Gamma is strictly below 2.  Degenerate denominators are reported as
    ineligible rather than raised.
    """
    if d not in (1, 2, 3):
        raise ContractViolationError(f"dimension must be 1, 2 or 3, got {d}")
    small, big = exps.smallest, exps.largest
    den_23 = 4.0 + 3.0 * big - 2.0 * d
    den_24 = 4.0 + 3.0 * small - d
    if den_23 <= 0 or den_24 <= 0:
        gamma = float("nan")
        if den_24 > 0:
            gamma = (d / den_24) * (2.0 + 4.0 * abs(exps.alpha - exps.beta) / (4.0 + 3.0 * small))
        return ConditionReport(
            d, exps.alpha, exps.beta, False, False, False, False, False,
            gamma_value=gamma,
            eligible=False,
            reason=f"degenerate denominator: 4+3max-2d={den_23:g}, 4+3min-d={den_24:g}",
        )
    cond_22 = (2.0 * d) / (4.0 + 3.0 * small) < 1.0
    cond_23 = (small / big) * (d / 4.0) * (2.0 + 2.0 * d / den_23) > 1.0
    gamma = (d / den_24) * (2.0 + 4.0 * abs(exps.alpha - exps.beta) / (4.0 + 3.0 * small))
    cond_24 = gamma <= 2.0 + GAMMA_EQUALITY_TOL
    cond_25 = (4.0 + 3.0 * big) / (4.0 + 3.0 * small) < 1.0 + d / (4.0 + 3.0 * big - d)
    cond_26 = (small / big) * (d / 2.0) >= 1.0
    gamma_is_two = abs(gamma - 2.0) <= GAMMA_EQUALITY_TOL
    eligible = cond_22 and cond_23 and cond_24 and (gamma_is_two or (cond_25 and cond_26))
    reason = "" if eligible else "one or more conditions failed"
    return ConditionReport(
        d, exps.alpha, exps.beta, cond_22, cond_23, cond_24, cond_25, cond_26,
        gamma_value=float(gamma), eligible=eligible, reason=reason,
    )
