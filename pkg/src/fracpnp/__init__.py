"""Pseudo-spectral solver and verification harness for a fractional
drift-diffusion system of two coupled charge densities."""

__version__ = "0.1.0"

from .spectral import (
    FracExponents,
    GridSpec,
    RealField,
    SpectralField,
    dealias,
    forward,
    frac_laplacian,
    gradient,
    inv_laplacian,
    inverse,
    norm_hs_dot,
    norm_lp,
    wiener_norm,
)
from .semigroup import (
    PropagatorSpec,
    SemigroupDecayReport,
    geometric_times,
    heat_propagate,
    hypercontractivity_probe,
    semigroup_linf_decay_check,
)
from .solver import (
    Bump,
    InitialData,
    SimResult,
    SimState,
    SolverParams,
    make_state,
    nonlinear_rhs,
    simulate,
    step,
)
from .diagnostics import (
    ConditionReport,
    DecayFit,
    DiagnosticsSpec,
    NormSeries,
    RatePrediction,
    check_conditions,
    default_fit_window,
    fit_decay,
    grad_psi_inf,
    lyapunov,
    predicted_exponents,
    profile_difference,
    resolution_monitors,
    saturation_cut,
)
from .inequalities import (
    FourierSumFunction,
    GaussianMixtureFunction,
    ModeSum,
    OracleParams,
    calibrate_kernel_constant,
    commutator_exact_check,
    kato_ponce_check,
    frac_lap_quadrature,
    extremum_lower_bound,
    run_suite,
    standard_kernel_constant,
    wiener_interp_check,
)
from .config import RunConfig, parse_config, serialize_config
from .errors import (
    CalibrationError,
    ConfigError,
    ContractViolationError,
    GridMismatchError,
    NumericalFailureError,
    QuadratureFailureError,
    SaturationWindowError,
    UnfittableSeriesError,
)
