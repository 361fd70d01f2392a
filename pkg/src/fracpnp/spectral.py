"""Periodic grids, Fourier transforms, multiplier operators, and discrete norms.

The physical box is [-L, L)^d with n uniformly spaced points per axis, used as
a truncation of the whole space.  Transform normalization is fixed so that
``coeff(k) = (1/n^d) sum_j f(x_j) exp(-i k.x_j)``, i.e. ``coeff(0)`` is the
mean of the field, and the wavenumber lattice is ``k = (pi/L) m`` with integer
``m`` in ``[-n/2, n/2)`` per axis.

Discrete norms approximate their whole-space counterparts by rectangle-rule
quadrature in physical space and Parseval sums in Fourier space.  The Wiener
norm is the plain sum of coefficient magnitudes, which is the Riemann
approximation of ``int |u^(xi)| dxi`` in the convention
``u^(xi) = (2 pi)^{-d} int u(x) exp(-i xi.x) dx``; with that convention
``sup |u| <= wiener_norm(u)`` holds with constant one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import inf, isfinite

import numpy as np

from .errors import ContractViolationError, GridMismatchError


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on [-L, L)^d."""

    d: int
    n: int
    half_length: float

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise ContractViolationError(f"dimension must be 1, 2 or 3, got {self.d}")
        if self.n < 8 or self.n % 2 != 0:
            raise ContractViolationError(f"points per axis must be even and >= 8, got {self.n}")
        if not (self.half_length > 0 and isfinite(self.half_length)):
            raise ContractViolationError(f"half_length must be positive, got {self.half_length}")

    @property
    def shape(self):
        return (self.n,) * self.d

    @property
    def size(self):
        return self.n**self.d

    @property
    def spacing(self):
        return 2.0 * self.half_length / self.n

    @property
    def volume(self):
        return (2.0 * self.half_length) ** self.d

    def axis(self):
        """Physical coordinates along one axis."""
        return -self.half_length + self.spacing * np.arange(self.n)

    def meshgrid(self):
        """Physical coordinate arrays, one per axis, each of full shape."""
        ax = self.axis()
        return np.meshgrid(*([ax] * self.d), indexing="ij")


@dataclass(frozen=True)
class FracExponents:
    """Diffusion orders for the two species."""

    alpha: float
    beta: float

    def __post_init__(self):
        for name, val in (("alpha", self.alpha), ("beta", self.beta)):
            if not (0.0 < val < 2.0):
                raise ContractViolationError(f"{name} must lie in (0, 2), got {val}")

    @property
    def largest(self):
        return max(self.alpha, self.beta)

    @property
    def smallest(self):
        return min(self.alpha, self.beta)


class RealField:
    """Scalar function sampled on a grid; treated as an immutable value."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: GridSpec, values):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != grid.shape:
            raise ContractViolationError(
                f"values shape {values.shape} does not match grid shape {grid.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ContractViolationError("field contains non-finite values")
        self.grid = grid
        self.values = values

    def __repr__(self):
        return f"RealField(d={self.grid.d}, n={self.grid.n}, L={self.grid.half_length})"


class SpectralField:
    """Fourier coefficients on the full wavenumber lattice (fft ordering)."""

    __slots__ = ("grid", "coeffs")

    def __init__(self, grid: GridSpec, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        if coeffs.shape != grid.shape:
            raise ContractViolationError(
                f"coeffs shape {coeffs.shape} does not match grid shape {grid.shape}"
            )
        self.grid = grid
        self.coeffs = coeffs

    def __repr__(self):
        return f"SpectralField(d={self.grid.d}, n={self.grid.n}, L={self.grid.half_length})"


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError(f"grid mismatch: {a.grid} vs {b.grid}")


# ---------------------------------------------------------------------------
# cached wavenumber machinery


@lru_cache(maxsize=64)
def wavenumber_axis(grid: GridSpec):
    """Wavenumbers (pi/L) m along one axis, fft ordering."""
    k = 2.0 * np.pi * np.fft.fftfreq(grid.n, d=grid.spacing)
    k.setflags(write=False)
    return k


@lru_cache(maxsize=64)
def wavenumber_mesh(grid: GridSpec):
    """Tuple of d broadcastable wavenumber arrays (full k_j components)."""
    k = wavenumber_axis(grid)
    out = []
    for j in range(grid.d):
        shape = [1] * grid.d
        shape[j] = grid.n
        kj = k.reshape(shape).copy()
        kj.setflags(write=False)
        out.append(kj)
    return tuple(out)


@lru_cache(maxsize=64)
def mode_axis(grid: GridSpec):
    """Integer mode indices m in fft ordering, k = (pi/L) m."""
    m = np.rint(np.fft.fftfreq(grid.n, d=1.0 / grid.n)).astype(np.int64)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=64)
def derivative_mesh(grid: GridSpec):
    """Like wavenumber_mesh but with the Nyquist mode zeroed per axis.

    An odd-order derivative multiplier at the unpaired Nyquist frequency would
    break realness; zeroing it keeps the discrete derivative real and
    antisymmetric.
    """
    m = mode_axis(grid)
    scale = np.pi / grid.half_length
    out = []
    for j in range(grid.d):
        shape = [1] * grid.d
        shape[j] = grid.n
        kd = scale * np.where(m == -(grid.n // 2), 0, m).astype(np.float64)
        kd = kd.reshape(shape)
        kd.setflags(write=False)
        out.append(kd)
    return tuple(out)


@lru_cache(maxsize=64)
def wavenumber_norm(grid: GridSpec):
    """|k| on the full lattice."""
    k2 = np.zeros(grid.shape)
    for kj in wavenumber_mesh(grid):
        k2 = k2 + kj**2
    kn = np.sqrt(k2)
    kn.setflags(write=False)
    return kn


@lru_cache(maxsize=64)
def inverse_k2(grid: GridSpec):
    """1/|k|^2 with the zero mode mapped to 0 (Poisson gauge)."""
    kn = wavenumber_norm(grid)
    out = np.zeros(grid.shape)
    nz = kn > 0
    out[nz] = 1.0 / kn[nz] ** 2
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def origin_phase(grid: GridSpec):
    """Per-mode factor exp(i k.(-L,...,-L))* = prod_j (-1)^{m_j}.

    numpy's fft indexes samples from the array origin; the box starts at -L,
    so physical coefficients (2L)^{-d} int f exp(-i k.x) dx differ from raw
    DFT output by this real sign pattern (a half-box translation).
    """
    m = mode_axis(grid)
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    out = np.ones(grid.shape)
    for j in range(grid.d):
        shape = [1] * grid.d
        shape[j] = grid.n
        out = out * sign.reshape(shape)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def dealias_mask(grid: GridSpec, fraction: float):
    """Boolean keep-mask: zero any mode with |m_j| > fraction * n/2 on some axis."""
    if not (0.0 < fraction <= 1.0):
        raise ContractViolationError(f"dealias fraction must lie in (0, 1], got {fraction}")
    m = mode_axis(grid)
    cutoff = fraction * (grid.n / 2.0)
    keep = np.ones(grid.shape, dtype=bool)
    for j in range(grid.d):
        shape = [1] * grid.d
        shape[j] = grid.n
        keep &= (np.abs(m) <= cutoff + 1e-12).reshape(shape)
    keep.setflags(write=False)
    return keep


# ---------------------------------------------------------------------------
# transforms


def forward(f: RealField) -> SpectralField:
    """Forward transform; coeff(0) equals the mean of the field."""
    coeffs = np.fft.fftn(f.values) * (origin_phase(f.grid) / f.grid.size)
    return SpectralField(f.grid, coeffs)


def inverse(F: SpectralField) -> RealField:
    """Inverse transform back to physical samples (real part)."""
    raw = F.coeffs * (origin_phase(F.grid) * F.grid.size)
    return RealField(F.grid, np.fft.ifftn(raw).real)


def apply_multiplier(f: RealField, multiplier) -> RealField:
    """Physical-to-physical application of a Fourier multiplier array."""
    return inverse(SpectralField(f.grid, forward(f).coeffs * multiplier))


# ---------------------------------------------------------------------------
# operators


def frac_laplacian(f: RealField, a: float) -> RealField:
    """Fractional Laplacian with symbol |k|^a; the zero mode maps to 0."""
    if a < 0:
        raise ContractViolationError(f"fractional order must be >= 0, got {a}")
    kn = wavenumber_norm(f.grid)
    mult = np.where(kn > 0, kn, 1.0) ** a
    mult = np.where(kn > 0, mult, 0.0)
    return apply_multiplier(f, mult)


def inv_laplacian(rhs: RealField) -> RealField:
    """Solve the Poisson problem with zero-mean gauge.

    Returns psi with psi^(k) = -rhs^(k)/|k|^2 for k != 0 and psi^(0) = 0; any
    constant offset of the source (non-neutral data) is dropped.
    """
    return apply_multiplier(rhs, -inverse_k2(rhs.grid))


def gradient(f: RealField):
    """Spectral gradient, one RealField per axis; Nyquist modes zeroed."""
    F = forward(f)
    return [
        inverse(SpectralField(f.grid, 1j * kj * F.coeffs))
        for kj in derivative_mesh(f.grid)
    ]


def dealias(F: SpectralField, fraction: float) -> SpectralField:
    """Zero every mode above the cutoff fraction of the Nyquist index."""
    return SpectralField(F.grid, F.coeffs * dealias_mask(F.grid, fraction))


# ---------------------------------------------------------------------------
# norms


def norm_lp(f: RealField, p: float) -> float:
    """Rectangle-rule L^p norm; p = inf is the max over grid samples."""
    if p == inf:
        return float(np.max(np.abs(f.values)))
    if p < 1:
        raise ContractViolationError(f"p must be >= 1 or inf, got {p}")
    h_d = f.grid.spacing**f.grid.d
    return float((h_d * np.sum(np.abs(f.values) ** p)) ** (1.0 / p))


def norm_hs_dot(f: RealField, s: float) -> float:
    """Homogeneous Sobolev norm via Parseval: ((2L)^d sum |k|^{2s} |coeff|^2)^{1/2}."""
    if s < 0:
        raise ContractViolationError(f"Sobolev order must be >= 0, got {s}")
    return hs_dot_from_coeffs(f.grid, forward(f).coeffs, s)


def hs_dot_from_coeffs(grid: GridSpec, coeffs, s: float) -> float:
    kn = wavenumber_norm(grid)
    weights = kn ** (2.0 * s)  # 0^0 == 1: s = 0 reduces to the L^2 norm
    return float(np.sqrt(grid.volume * np.sum(weights * np.abs(coeffs) ** 2)))


def wiener_norm(f: RealField) -> float:
    """Sum of coefficient magnitudes; dominates the sup norm of the field."""
    return wiener_from_coeffs(forward(f).coeffs)


def wiener_from_coeffs(coeffs) -> float:
    return float(np.sum(np.abs(coeffs)))
