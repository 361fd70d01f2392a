"""Numerical verification of the functional inequalities behind the decay proofs.

Contents: a principal-value quadrature oracle for the fractional Laplacian
(the grid-free reference the spectral multiplier is checked against), the
pointwise lower bound at extrema with its fully explicit constant, the
Wiener-algebra interpolation inequalities with explicit constants, and the
two commutator estimates.

The kernel constant is *calibrated*: it is defined as the factor making the
quadrature oracle reproduce the Fourier multiplier |k|^a on a reference
Gaussian, and the calibration is asserted to match the closed form
2^a Gamma((d+a)/2) / (pi^{d/2} |Gamma(-a/2)|).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma as gamma_fn
from math import inf, pi, sqrt

import numpy as np
from scipy import integrate

from .errors import (
    CalibrationError,
    ContractViolationError,
    QuadratureFailureError,
)
from .spectral import RealField, norm_hs_dot, norm_lp, wiener_norm


def unit_ball_volume(d: int) -> float:
    return pi ** (d / 2.0) / gamma_fn(d / 2.0 + 1.0)


def unit_sphere_area(d: int) -> float:
    return 2.0 * pi ** (d / 2.0) / gamma_fn(d / 2.0)


def standard_kernel_constant(a: float, d: int) -> float:
    """Closed-form normalization of the singular kernel |eta|^{-d-a}."""
    if not (0.0 < a < 2.0):
        raise ContractViolationError(f"kernel constant defined for a in (0, 2), got {a}")
    return 2.0**a * gamma_fn((d + a) / 2.0) / (pi ** (d / 2.0) * abs(gamma_fn(-a / 2.0)))


# ---------------------------------------------------------------------------
# closed-form test functions


class GaussianMixtureFunction:
    """Sum of radial Gaussians with analytic derivatives and rapid decay."""

    def __init__(self, d, amplitudes, centers, widths):
        self.d = int(d)
        self.amplitudes = np.asarray(amplitudes, dtype=float)
        self.centers = np.asarray(centers, dtype=float).reshape(len(self.amplitudes), self.d)
        self.widths = np.asarray(widths, dtype=float)
        if np.any(self.widths <= 0):
            raise ContractViolationError("mixture widths must be positive")

    decaying = True

    def value(self, points):
        """Evaluate at points of shape (..., d)."""
        pts = np.asarray(points, dtype=float)
        squeeze = pts.ndim == 1
        pts = pts.reshape(-1, self.d)
        out = np.zeros(pts.shape[0])
        for amp, c, w in zip(self.amplitudes, self.centers, self.widths):
            r2 = np.sum((pts - c) ** 2, axis=1)
            out += amp * np.exp(-r2 / w**2)
        return out[0] if squeeze else out

    def gradient_at(self, x):
        x = np.asarray(x, dtype=float).reshape(self.d)
        g = np.zeros(self.d)
        for amp, c, w in zip(self.amplitudes, self.centers, self.widths):
            diff = x - c
            g += amp * np.exp(-np.sum(diff**2) / w**2) * (-2.0 * diff / w**2)
        return g

    def hessian_at(self, x):
        x = np.asarray(x, dtype=float).reshape(self.d)
        h = np.zeros((self.d, self.d))
        eye = np.eye(self.d)
        for amp, c, w in zip(self.amplitudes, self.centers, self.widths):
            diff = x - c
            e = amp * np.exp(-np.sum(diff**2) / w**2)
            h += e * (4.0 * np.outer(diff, diff) / w**4 - 2.0 * eye / w**2)
        return h

    def laplacian_at(self, x):
        return float(np.trace(self.hessian_at(x)))

    def decay_radius(self, x) -> float:
        """Distance beyond which the mixture is zero to double precision."""
        x = np.asarray(x, dtype=float).reshape(self.d)
        return float(
            max(
                np.linalg.norm(x - c) + 27.0 * w
                for c, w in zip(self.centers, self.widths)
            )
        )

    def bounding_box(self, pad_widths: float = 15.0):
        lo = np.min(self.centers - pad_widths * self.widths[:, None], axis=0)
        hi = np.max(self.centers + pad_widths * self.widths[:, None], axis=0)
        return lo, hi

    def lp_norm(self, p: float, nodes_per_axis: int | None = None) -> float:
        """Whole-space L^p norm by tensorized trapezoid over the decay box."""
        if p == inf:
            # mixtures peak at or near a center; refine from the best center
            x0 = self.centers[int(np.argmax(np.abs(self.value(self.centers))))]
            return abs(float(self.value(x0)))
        if nodes_per_axis is None:
            nodes_per_axis = 8192 if self.d == 1 else 1024
        lo, hi = self.bounding_box()
        axes = [np.linspace(lo[j], hi[j], nodes_per_axis) for j in range(self.d)]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        vals = np.abs(self.value(pts)) ** p
        cell = np.prod([(hi[j] - lo[j]) / (nodes_per_axis - 1) for j in range(self.d)])
        return float((np.sum(vals) * cell) ** (1.0 / p))

    def dilate(self, lam: float) -> "GaussianMixtureFunction":
        """h_lam(x) = h(x / lam)."""
        return GaussianMixtureFunction(
            self.d, self.amplitudes, self.centers * lam, self.widths * lam
        )


class FourierSumFunction:
    """Finite sum of cosines A_j cos(k_j x + phi_j); one-dimensional, periodic."""

    def __init__(self, terms):
        self.d = 1
        self.terms = [(float(a), float(k), float(phi)) for a, k, phi in terms]
        if any(k <= 0 for _, k, _ in self.terms):
            raise ContractViolationError("Fourier-sum wavenumbers must be positive")

    decaying = False

    def value(self, points):
        pts = np.asarray(points, dtype=float)
        squeeze = pts.ndim == 0 or (pts.ndim == 1 and pts.shape == (1,))
        x = pts.reshape(-1)
        out = np.zeros(x.shape[0])
        for a, k, phi in self.terms:
            out += a * np.cos(k * x + phi)
        return out[0] if squeeze else out

    def gradient_at(self, x):
        x = float(np.asarray(x).reshape(()))
        return np.array([-sum(a * k * np.sin(k * x + phi) for a, k, phi in self.terms)])

    def laplacian_at(self, x):
        x = float(np.asarray(x).reshape(()))
        return -sum(a * k * k * np.cos(k * x + phi) for a, k, phi in self.terms)

    def oscillatory_tail(self, x, a: float, r_out: float) -> float:
        """int_{|eta|>R} h(x - eta) |eta|^{-1-a} d eta via cosine-weighted quadrature."""
        total = 0.0
        for amp, k, phi in self.terms:
            # cos(k(x-eta)+phi) = cos(kx+phi)cos(k eta) + sin(kx+phi)sin(k eta);
            # the sine part is odd in eta and cancels over the two tails.
            coef = amp * np.cos(k * float(np.asarray(x).reshape(())) + phi)
            val, _ = integrate.quad(
                lambda r: r ** (-1.0 - a), r_out, np.inf, weight="cos", wvar=k, limit=400
            )
            total += 2.0 * coef * val
        return total


# ---------------------------------------------------------------------------
# the quadrature oracle


@dataclass(frozen=True)
class OracleParams:
    """Cutoffs and node counts for the principal-value quadrature."""

    kernel_constant: float | None = None  # None: standard closed form for (a, d)
    eps_inner: float = 1e-3
    r_outer: float | None = None  # None: the test function's decay radius
    theta_nodes: int = 256
    quad_limit: int = 400
    rel_tol: float = 1e-6
    abs_tol: float = 1e-12
    check_refinement: bool = True

    def __post_init__(self):
        if self.eps_inner <= 0:
            raise ContractViolationError("inner cutoff must be positive")
        if self.r_outer is not None and self.r_outer <= self.eps_inner:
            raise ContractViolationError("outer cutoff must exceed the inner cutoff")


def _value_at(h, x) -> float:
    pts = np.asarray(x, dtype=float).reshape(1, h.d)
    return float(np.asarray(h.value(pts)).reshape(-1)[0])


def _inner_taylor(h, x, a: float, eps: float) -> float:
    """P.V. contribution of |eta| < eps from the quadratic Taylor term.

    The odd gradient term vanishes under the principal value; the quadratic
    term integrates to -(Lap h(x) / 2d) * sigma_{d-1} * eps^{2-a} / (2-a).
    """
    sigma = unit_sphere_area(h.d)
    return -h.laplacian_at(x) / (2.0 * h.d) * sigma * eps ** (2.0 - a) / (2.0 - a)


def _annulus_quad(h, x, a: float, eps: float, r_out: float, params: OracleParams):
    """Integral of (h(x) - h(x - eta)) |eta|^{-d-a} over eps < |eta| < r_out."""
    hx = _value_at(h, x)
    if h.d == 1:
        x0 = float(np.asarray(x).reshape(()))

        def integrand(r):
            return (2.0 * hx - h.value(np.array([x0 - r])) - h.value(np.array([x0 + r]))) * r ** (
                -1.0 - a
            )

        out = integrate.quad(
            integrand, eps, r_out, limit=params.quad_limit,
            epsabs=1e-13, epsrel=1e-11, full_output=1,
        )
        return out[0], out[1]
    # d = 2: radial quadrature of the ring average
    theta = np.linspace(0.0, 2.0 * pi, params.theta_nodes, endpoint=False)
    ring = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    xv = np.asarray(x, dtype=float).reshape(1, 2)

    def integrand(r):
        pts = xv - r * ring
        return (2.0 * pi * hx - np.mean(h.value(pts)) * 2.0 * pi) * r ** (-1.0 - a)

    out = integrate.quad(
        integrand, eps, r_out, limit=params.quad_limit,
        epsabs=1e-13, epsrel=1e-11, full_output=1,
    )
    return out[0], out[1]


def _raw_pv_integral(h, x, a: float, params: OracleParams):
    """The principal-value integral without the kernel constant."""
    if h.d not in (1, 2):
        raise ContractViolationError("quadrature oracle supports d in {1, 2}")
    eps = params.eps_inner
    if params.r_outer is not None:
        r_out = params.r_outer
    elif h.decaying:
        r_out = max(h.decay_radius(x), 10.0 * eps)
    else:
        r_out = 50.0  # the oscillatory remainder past this is added analytically
    hx = _value_at(h, x)
    sigma = unit_sphere_area(h.d)
    inner = _inner_taylor(h, x, a, eps)
    annulus, ann_err = _annulus_quad(h, x, a, eps, r_out, params)
    tail = hx * sigma * r_out ** (-a) / a
    if h.decaying and params.r_outer is None:
        correction = 0.0  # r_out is the decay radius: the dropped mass is below eps_mach
    elif hasattr(h, "oscillatory_tail"):
        correction = h.oscillatory_tail(x, a, r_out)
    else:
        correction = 0.0
    value = inner + annulus + tail - correction
    error = abs(ann_err)
    if params.check_refinement:
        inner_half = _inner_taylor(h, x, a, eps / 2.0)
        bridge, bridge_err = _annulus_quad(h, x, a, eps / 2.0, eps, params)
        error += abs(inner_half + bridge - inner) + abs(bridge_err)
    return value, error


def frac_lap_quadrature(h, x, a: float, params: OracleParams | None = None) -> float:
    """Fractional Laplacian at a point by direct singular-integral quadrature.

    Inner region: second-order Taylor regularization; middle: adaptive
    quadrature; tail: the analytic h(x) contribution plus, for periodic test
    functions, the oscillatory remainder.  Raises QuadratureFailureError if
    the epsilon-refinement check moves the result beyond the tolerance.
    """
    if not (0.0 < a < 2.0):
        raise ContractViolationError(f"quadrature oracle needs a in (0, 2), got {a}")
    if params is None:
        params = OracleParams()
    c = params.kernel_constant
    if c is None:
        c = standard_kernel_constant(a, h.d)
    raw, err = _raw_pv_integral(h, x, a, params)
    if err > params.rel_tol * max(abs(raw), 1e-30) + params.abs_tol / c:
        raise QuadratureFailureError(
            f"quadrature failure: error estimate {c * err:.3e} on value {c * raw:.3e}",
            error_estimate=c * err,
        )
    return c * raw


def calibrate_kernel_constant(a: float, d: int, params: OracleParams | None = None) -> float:
    """Kernel constant defined by matching the oracle to the multiplier.

    Applies the unnormalized principal-value integral to the reference
    Gaussian exp(-|x|^2) at the origin, where the multiplier definition gives
    the closed value 2^a Gamma((d+a)/2) / Gamma(d/2), and returns the ratio.
    Asserts agreement with the standard closed-form constant to 1e-6.
    """
    if not (0.0 < a < 2.0):
        raise ContractViolationError(f"calibration restricted to a in (0, 2), got {a}")
    if params is None:
        params = OracleParams()
    h = GaussianMixtureFunction(d, [1.0], [np.zeros(d)], [1.0])
    raw, _ = _raw_pv_integral(h, np.zeros(d), a, params)
    multiplier_value = 2.0**a * gamma_fn((d + a) / 2.0) / gamma_fn(d / 2.0)
    calibrated = multiplier_value / raw
    reference = standard_kernel_constant(a, d)
    if abs(calibrated - reference) > 1e-6 * reference:
        raise CalibrationError(
            f"kernel constant calibration failure: got {calibrated!r}, "
            f"closed form {reference!r} (a={a}, d={d})"
        )
    return calibrated


# ---------------------------------------------------------------------------
# pointwise lower bound at extrema (explicit proof constant)


def _refine_extremum(h, x0, sign: float, iters: int = 60):
    """Newton refinement of a critical point from a dense-scan seed."""
    x = np.asarray(x0, dtype=float).reshape(h.d)
    for _ in range(iters):
        g = h.gradient_at(x)
        if np.linalg.norm(g) < 1e-14:
            break
        hess = h.hessian_at(x)
        try:
            step_vec = np.linalg.solve(hess, g)
        except np.linalg.LinAlgError:
            step_vec = sign * g * 0.1
        if np.linalg.norm(step_vec) > 1.0:
            step_vec = step_vec / np.linalg.norm(step_vec)
        x_new = x - step_vec
        if sign * h.value(x_new.reshape(1, h.d))[0] < sign * h.value(x.reshape(1, h.d))[0]:
            x_new = x - 0.25 * step_vec  # damped fallback near saddle seeds
        if np.linalg.norm(x_new - x) < 1e-12:
            x = x_new
            break
        x = x_new
    return x


def locate_extremum(h: GaussianMixtureFunction, side: str = "max", scan_nodes: int = 2048):
    """Dense scan over the mixture's box followed by Newton polish."""
    lo, hi = h.bounding_box(pad_widths=3.0)
    n = scan_nodes if h.d == 1 else 256
    axes = [np.linspace(lo[j], hi[j], n) for j in range(h.d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    vals = h.value(pts)
    sign = 1.0 if side == "max" else -1.0
    seed = pts[int(np.argmax(sign * vals))]
    return _refine_extremum(h, seed, sign)


def extremum_lower_bound(h: GaussianMixtureFunction, a: float, p: float,
                  params: OracleParams | None = None, side: str = "max") -> dict:
    """Pointwise fractional-Laplacian bound at the global extremum.

    The right-hand side is assembled by executing the covering argument with
    the explicit radius omega_d r^d = 2 (2 ||h||_p / |h(x)|)^p, so the
    reported constant is the proof's own, not a fitted one.
    """
    if p < 1:
        raise ContractViolationError(f"p must be >= 1, got {p}")
    if params is None:
        params = OracleParams()
    x_star = locate_extremum(h, side=side)
    h_star = _value_at(h, x_star)
    if side == "max" and h_star <= 0:
        raise ContractViolationError("the bound requires a positive maximum")
    if side == "min" and h_star >= 0:
        raise ContractViolationError("minimum-side variant requires a negative minimum")
    lp = h.lp_norm(p)
    c_kernel = params.kernel_constant
    if c_kernel is None:
        c_kernel = standard_kernel_constant(a, h.d)
    omega = unit_ball_volume(h.d)
    ratio_term = 2.0 * lp / abs(h_star)
    r = ((2.0 / omega) * ratio_term**p) ** (1.0 / h.d)
    rhs = c_kernel * (h_star / 2.0) * ratio_term**p / r ** (h.d + a)
    lhs = frac_lap_quadrature(h, x_star, a, params)
    if side == "max":
        holds = lhs >= rhs * (1.0 - 1e-6)
    else:
        holds = lhs <= rhs * (1.0 - 1e-6)
    return {
        "side": side,
        "x_star": [float(v) for v in np.atleast_1d(x_star)],
        "h_star": h_star,
        "lp_norm": lp,
        "radius": float(r),
        "lhs": float(lhs),
        "rhs": float(rhs),
        "holds": bool(holds),
    }


# ---------------------------------------------------------------------------
# Wiener-algebra interpolation with explicit constants


def wiener_interp_check(u: RealField, delta: float) -> dict:
    """Both interpolation bounds for ||u^||_1 with the proof's constants.

    First bound: omega_d ||u||_1 R^d + C_delta ||u||_{H.^{d/2+delta}} R^{-delta}
    at R = (||u||_{H.}/||u||_1)^{1/(d+delta)}; second bound replaces the mass
    term by sqrt(omega_d R^d) ||u||_2 with the matching R.  C_delta is
    (2 delta)^{-1/2}, from the radial tail integral.
    """
    if delta <= 0:
        raise ContractViolationError(f"delta must be positive, got {delta}")
    d = u.grid.d
    lhs = wiener_norm(u)
    if lhs == 0:
        raise ContractViolationError("wiener check requires a nonzero field")
    l1 = norm_lp(u, 1)
    l2 = norm_lp(u, 2)
    hd = norm_hs_dot(u, d / 2.0 + delta)
    omega = unit_ball_volume(d)
    c_delta = (2.0 * delta) ** -0.5
    r1 = (hd / l1) ** (1.0 / (d + delta))
    rhs1 = omega * l1 * r1**d + c_delta * hd * r1 ** (-delta)
    r2 = (hd / l2) ** (1.0 / (d / 2.0 + delta))
    rhs2 = sqrt(omega) * l2 * r2 ** (d / 2.0) + c_delta * hd * r2 ** (-delta)
    tol = 1.0 + 1e-12
    return {
        "delta": delta,
        "lhs": lhs,
        "rhs_l1": float(rhs1),
        "rhs_l2": float(rhs2),
        "slack_l1": float(rhs1 / lhs),
        "slack_l2": float(rhs2 / lhs),
        "holds": bool(lhs <= rhs1 * tol and lhs <= rhs2 * tol),
    }


# ---------------------------------------------------------------------------
# commutator estimates on finite Fourier sums


class ModeSum:
    """Finite Fourier sum as a dict of integer wavenumber -> complex coefficient.

    Represents functions on the 2 pi-periodic box, so the commutator of
    multiplier operators is computed exactly by finite convolution (no grid,
    no quadrature error).
    """

    def __init__(self, d: int, modes: dict):
        self.d = int(d)
        self.modes = {tuple(int(i) for i in k): complex(c) for k, c in modes.items() if c != 0}

    @classmethod
    def from_real_cosines(cls, d, terms):
        """terms: iterable of (amplitude, k_vector); builds a real field."""
        modes = {}
        for amp, k in terms:
            k = tuple(int(i) for i in k)
            mk = tuple(-i for i in k)
            modes[k] = modes.get(k, 0.0) + amp / 2.0
            modes[mk] = modes.get(mk, 0.0) + amp / 2.0
        return cls(d, modes)

    def lam_pow(self, s: float) -> "ModeSum":
        """Multiply by |k|^s (zero mode maps to zero for s > 0)."""
        out = {}
        for k, c in self.modes.items():
            kn = sqrt(sum(i * i for i in k))
            out[k] = c * kn**s if kn > 0 else (c if s == 0 else 0.0)
        return ModeSum(self.d, out)

    def grad(self, axis: int) -> "ModeSum":
        return ModeSum(self.d, {k: 1j * k[axis] * c for k, c in self.modes.items()})

    def mul(self, other: "ModeSum") -> "ModeSum":
        out = {}
        for k1, c1 in self.modes.items():
            for k2, c2 in other.modes.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0.0) + c1 * c2
        return ModeSum(self.d, out)

    def sub(self, other: "ModeSum") -> "ModeSum":
        out = dict(self.modes)
        for k, c in other.modes.items():
            out[k] = out.get(k, 0.0) - c
        return ModeSum(self.d, out)

    def l2_norm(self) -> float:
        vol = (2.0 * pi) ** self.d
        return sqrt(vol * sum(abs(c) ** 2 for c in self.modes.values()))

    def wiener(self) -> float:
        return sum(abs(c) for c in self.modes.values())


def commutator_exact_check(f: ModeSum, g: ModeSum, s: float) -> dict:
    """Commutator of Lambda^s grad against multiplication, exact modes.

    lhs is the L^2 norm of [Lambda^s grad, g] f assembled by finite
    convolution; rhs carries the explicit constant 2^{max(s-1, 0)}.
    """
    if s < 1:
        raise ContractViolationError(f"this check requires s >= 1, got {s}")
    if f.d != g.d:
        raise ContractViolationError("f and g must share a dimension")
    gf = g.mul(f)
    lhs_sq = 0.0
    for axis in range(f.d):
        term1 = gf.lam_pow(s).grad(axis)
        term2 = g.mul(f.lam_pow(s).grad(axis))
        lhs_sq += term1.sub(term2).l2_norm() ** 2
    lhs = sqrt(lhs_sq)
    c = 2.0 ** max(s - 1.0, 0.0)
    rhs = c * (
        f.lam_pow(s).l2_norm() * g.lam_pow(1.0).wiener()
        + g.lam_pow(s + 1.0).l2_norm() * f.wiener()
    )
    ratio = 0.0 if rhs == 0 else lhs / rhs
    return {
        "s": s,
        "lhs": lhs,
        "rhs": rhs,
        "constant": c,
        "ratio": ratio,
        "holds": bool(ratio <= 1.0 + 1e-10),
    }


def _mode_sum_on_grid(ms: ModeSum, grid) -> RealField:
    """Realize a mode sum on a grid with half_length pi (integer lattice)."""
    if abs(grid.half_length - pi) > 1e-12:
        raise ContractViolationError("mode sums live on the half_length = pi box")
    coeffs = np.zeros(grid.shape, dtype=np.complex128)
    for k, c in ms.modes.items():
        idx = tuple(i % grid.n for i in k)
        coeffs[idx] += c
    vals = np.fft.ifftn(coeffs * grid.size).real
    return RealField(grid, vals)


def _lp_grid(values, spacing_d, p):
    if p == inf:
        return float(np.max(np.abs(values)))
    return float((spacing_d * np.sum(np.abs(values) ** p)) ** (1.0 / p))


def kato_ponce_check(f: ModeSum, g: ModeSum, s: float, p: float,
                        p1: float, p2: float, p3: float, p4: float,
                        n: int = 128, box_scale: float = 1.0) -> dict:
    """Leibniz-type commutator [Lambda^s, g] f with Hoelder-split right side.

    The sharp constant is unknown; the report carries the ratio of the two
    sides, which callers track over ensembles and dilations.  box_scale
    dilates the pair by reinterpreting the same samples on a larger box.
    """

    def _inv(q):
        return 0.0 if q == inf else 1.0 / q

    if abs(_inv(p) - _inv(p1) - _inv(p2)) > 1e-12 or abs(_inv(p) - _inv(p3) - _inv(p4)) > 1e-12:
        raise ContractViolationError("Hoelder exponents incompatible with p")
    from .spectral import GridSpec, frac_laplacian, gradient

    base = GridSpec(f.d, n, pi)
    f_field = _mode_sum_on_grid(f, base)
    g_field = _mode_sum_on_grid(g, base)
    grid = GridSpec(f.d, n, pi * box_scale)
    f_field = RealField(grid, f_field.values)
    g_field = RealField(grid, g_field.values)
    h_d = grid.spacing**grid.d

    gf = RealField(grid, g_field.values * f_field.values)
    comm = frac_laplacian(gf, s).values - g_field.values * frac_laplacian(f_field, s).values
    lhs = _lp_grid(comm, h_d, p)
    grad_g = gradient(g_field)
    grad_mag = np.sqrt(np.sum([gg.values**2 for gg in grad_g], axis=0))
    rhs = _lp_grid(grad_mag, h_d, p1) * _lp_grid(
        frac_laplacian(f_field, s - 1.0).values, h_d, p2
    ) + _lp_grid(frac_laplacian(g_field, s).values, h_d, p3) * _lp_grid(f_field.values, h_d, p4)
    ratio = 0.0 if rhs == 0 else lhs / rhs
    return {"s": s, "p": p, "lhs": lhs, "rhs": rhs, "ratio": ratio}


# ---------------------------------------------------------------------------
# randomized verification suites
#
# Every stochastic corpus derives from one 64-bit run seed through the fixed
# splitting rule: member i of suite S uses SeedSequence((seed, SUITE_KEYS[S], i)).

SUITE_KEYS = {
    "oracle": 1,
    "extremum": 2,
    "wiener": 3,
    "commutator_exact": 4,
    "kato_ponce": 5,
    "interpolation": 6,
    "init": 7,
}

SUITE_NAMES = ("oracle", "extremum", "wiener", "commutator_exact", "kato_ponce", "interpolation")


def member_rng(seed: int, suite: str, index: int):
    return np.random.default_rng(np.random.SeedSequence((int(seed), SUITE_KEYS[suite], int(index))))


def _random_mixture(rng, d: int, allow_negative: bool = False) -> GaussianMixtureFunction:
    n_bumps = int(rng.integers(1, 4))
    amps = rng.uniform(0.3, 2.0, n_bumps)
    if allow_negative and n_bumps > 1:
        amps[1:] *= rng.choice([-0.5, 1.0], size=n_bumps - 1)
    centers = rng.uniform(-3.0, 3.0, (n_bumps, d))
    widths = rng.uniform(0.8, 2.5, n_bumps)
    return GaussianMixtureFunction(d, amps, centers, widths)


def _random_mode_sum(rng, n_modes: int = 16, k_max: int = 8) -> ModeSum:
    terms = [
        (float(rng.normal()), (int(k),))
        for k in rng.integers(1, k_max + 1, size=n_modes)
    ]
    return ModeSum.from_real_cosines(1, terms)


def _random_band_field(rng, grid, k_max: int = 8, n_modes: int = 10,
                       zero_mean: bool = True) -> RealField:
    vals = np.zeros(grid.shape) if zero_mean else np.full(grid.shape, rng.uniform(0.5, 1.5))
    mesh = grid.meshgrid()
    scale = pi / grid.half_length
    for _ in range(n_modes):
        kvec = rng.integers(1, k_max + 1, size=grid.d) * rng.choice([-1, 1], size=grid.d)
        amp = rng.normal()
        phase = rng.uniform(0.0, 2.0 * pi)
        arg = np.full(grid.shape, phase)
        for x, m in zip(mesh, kvec):
            arg = arg + scale * m * x
        vals = vals + amp * np.cos(arg)
    return RealField(grid, vals)


def suite_oracle(seed: int) -> list:
    """Oracle-vs-multiplier equivalence and kernel-constant calibration."""
    from .spectral import GridSpec, frac_laplacian

    checks = []
    grid = GridSpec(1, 2**17, 2000.0)
    x = grid.axis()
    f = RealField(grid, np.exp(-(x**2)))
    h = GaussianMixtureFunction(1, [1.0], [[0.0]], [1.0])
    probes = [grid.n // 2 + k for k in (0, 100, 400, 1200)]
    for a in (0.3, 0.5, 1.0, 1.5, 1.9):
        spectral_vals = frac_laplacian(f, a).values
        peak = float(np.max(np.abs(spectral_vals)))
        worst = 0.0
        for i in probes:
            q = frac_lap_quadrature(h, np.array([x[i]]), a)
            worst = max(worst, abs(q - spectral_vals[i]) / peak)
        checks.append({
            "id": f"oracle_multiplier_a{a:g}",
            "inputs": {"a": a, "d": 1, "n": grid.n, "half_length": grid.half_length},
            "lhs": worst,
            "rhs": 1e-4,
            "ratio": worst / 1e-4,
            "holds": bool(worst < 1e-4),
        })
    for d in (1, 2):
        for a in (0.5, 1.0, 1.5):
            ref = standard_kernel_constant(a, d)
            try:
                cal = calibrate_kernel_constant(a, d)
                err = abs(cal - ref) / ref
                ok = True
            except CalibrationError:
                cal, err, ok = float("nan"), float("inf"), False
            checks.append({
                "id": f"calibration_d{d}_a{a:g}",
                "inputs": {"a": a, "d": d},
                "lhs": cal,
                "rhs": ref,
                "ratio": err,
                "holds": bool(ok and err <= 1e-6),
                "printed_form_note": (
                    "printed constant 4^s Gamma(d/2+a)/(pi^{d/2}|Gamma(-a)|) does not "
                    "match the multiplier; calibration follows the multiplier"
                ),
            })
    return checks


def suite_extremum(seed: int, n_members: int = 50) -> list:
    """Pointwise lower bound on random positive-max Gaussian mixtures."""
    combos = [(d, a, p) for d in (1, 2) for a in (0.5, 1.0, 1.5) for p in (1.0, 2.0)]
    checks = []
    for i in range(n_members):
        d, a, p = combos[i % len(combos)]
        rng = member_rng(seed, "extremum", i)
        h = _random_mixture(rng, d)
        rep = extremum_lower_bound(h, a, p)
        checks.append({
            "id": f"extremum_{i:03d}",
            "inputs": {"d": d, "a": a, "p": p},
            "lhs": rep["lhs"],
            "rhs": rep["rhs"],
            "ratio": rep["rhs"] / rep["lhs"] if rep["lhs"] else float("inf"),
            "holds": rep["holds"],
        })
    return checks


def suite_wiener(seed: int, n_members: int = 100) -> list:
    """Explicit-constant interpolation bounds on random band-limited fields."""
    from .spectral import GridSpec

    grid = GridSpec(1, 256, pi)
    checks = []
    for i in range(n_members):
        rng = member_rng(seed, "wiener", i)
        u = _random_band_field(rng, grid)
        for delta in (0.5, 1.5):
            rep = wiener_interp_check(u, delta)
            checks.append({
                "id": f"wiener_{i:03d}_delta{delta:g}",
                "inputs": {"d": 1, "delta": delta},
                "lhs": rep["lhs"],
                "rhs": min(rep["rhs_l1"], rep["rhs_l2"]),
                "ratio": rep["lhs"] / min(rep["rhs_l1"], rep["rhs_l2"]),
                "holds": rep["holds"],
            })
    return checks


def suite_commutator_exact(seed: int, n_members: int = 100) -> list:
    """Exact-spectrum commutator bound with the explicit constant."""
    checks = []
    for i in range(n_members):
        rng = member_rng(seed, "commutator_exact", i)
        f = _random_mode_sum(rng)
        g = _random_mode_sum(rng)
        for s in (1.0, 1.5, 2.0):
            rep = commutator_exact_check(f, g, s)
            checks.append({
                "id": f"exact_comm_{i:03d}_s{s:g}",
                "inputs": {"s": s, "modes": 16},
                "lhs": rep["lhs"],
                "rhs": rep["rhs"],
                "ratio": rep["ratio"],
                "holds": rep["holds"],
            })
    return checks


def suite_kato_ponce(seed: int, n_members: int = 20) -> list:
    """Unknown-constant commutator: dilation invariance and grid stability."""
    checks = []
    exponents = (2.0, inf, 2.0, 2.0, inf)
    for i in range(n_members):
        rng = member_rng(seed, "kato_ponce", i)
        f = _random_mode_sum(rng, n_modes=8, k_max=5)
        g = _random_mode_sum(rng, n_modes=8, k_max=5)
        s = (1.0, 2.0)[i % 2]
        p, p1, p2, p3, p4 = exponents
        base = kato_ponce_check(f, g, s, p, p1, p2, p3, p4, n=128)
        ratios = [
            kato_ponce_check(f, g, s, p, p1, p2, p3, p4, n=128, box_scale=lam)["ratio"]
            for lam in (2.0, 4.0)
        ]
        spread = max(abs(r - base["ratio"]) for r in ratios)
        refined = kato_ponce_check(f, g, s, p, p1, p2, p3, p4, n=256)
        drift = abs(refined["ratio"] - base["ratio"]) / max(refined["ratio"], 1e-30)
        checks.append({
            "id": f"kato_ponce_{i:03d}_s{s:g}",
            "inputs": {"s": s, "p": p},
            "lhs": base["ratio"],
            "rhs": refined["ratio"],
            "ratio": base["ratio"],
            "dilation_spread": spread,
            "refinement_drift": drift,
            "holds": bool(
                np.isfinite(base["ratio"])
                and spread <= 1e-6 * max(base["ratio"], 1.0)
                and drift <= 0.10
            ),
        })
    return checks


def suite_interpolation(seed: int, n_members: int = 200) -> list:
    """Fourier-side interpolation inequalities with constant exactly one."""
    from .spectral import GridSpec, norm_hs_dot, norm_lp

    checks = []
    grid1 = GridSpec(1, 128, pi)
    grid2 = GridSpec(2, 32, pi)
    guard = 1.0 + 1e-12
    for i in range(n_members):
        rng = member_rng(seed, "interpolation", i)
        grid = grid1 if i % 2 == 0 else grid2
        u = _random_band_field(rng, grid, k_max=max(4, grid.n // 8),
                               zero_mean=bool(rng.integers(2)))
        r = float(rng.uniform(0.0, 2.0))
        s_extra = float(rng.uniform(0.0, 2.0))
        l2 = norm_lp(u, 2)
        lhs_a = norm_hs_dot(u, r) ** 2
        rhs_a = l2**2 + norm_hs_dot(u, r + s_extra) ** 2
        s_mid = float(rng.uniform(0.05, 0.95)) * max(r, 0.1)
        r_top = max(r, 0.1)
        lhs_b = norm_hs_dot(u, s_mid)
        rhs_b = l2 ** (1.0 - s_mid / r_top) * norm_hs_dot(u, r_top) ** (s_mid / r_top)
        ok = lhs_a <= rhs_a * guard and lhs_b <= rhs_b * guard
        checks.append({
            "id": f"interp_{i:03d}",
            "inputs": {"d": grid.d, "r": r, "s": s_extra, "s_mid": s_mid},
            "lhs": max(lhs_a / rhs_a, lhs_b / rhs_b),
            "rhs": 1.0,
            "ratio": max(lhs_a / rhs_a, lhs_b / rhs_b),
            "holds": bool(ok),
        })
    return checks


_SUITE_FUNCS = {
    "oracle": suite_oracle,
    "extremum": suite_extremum,
    "wiener": suite_wiener,
    "commutator_exact": suite_commutator_exact,
    "kato_ponce": suite_kato_ponce,
    "interpolation": suite_interpolation,
}


def run_suite(name: str, seed: int = 0) -> dict:
    """Run one named suite (or 'all') and return a deterministic report."""
    if name == "all":
        names = SUITE_NAMES
    elif name in _SUITE_FUNCS:
        names = (name,)
    else:
        raise ContractViolationError(
            f"unknown suite {name!r}; choose from {', '.join(_SUITE_FUNCS)} or 'all'"
        )
    checks = []
    for suite in names:
        checks.extend(_SUITE_FUNCS[suite](seed))
    checks.sort(key=lambda c: c["id"])
    counterexamples = sum(1 for c in checks if not c["holds"])
    return {
        "schema_version": 1,
        "suite": name,
        "seed": seed,
        "n_checks": len(checks),
        "counterexamples": counterexamples,
        "checks": checks,
    }
