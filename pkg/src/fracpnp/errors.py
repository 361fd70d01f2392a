"""Exception types shared across the package."""


class ContractViolationError(ValueError):
    """An argument or state violates a documented precondition."""


class GridMismatchError(ContractViolationError):
    """Fields defined on different grids were combined."""


class NumericalFailureError(RuntimeError):
    """A run became unusable: instability, positivity loss, or domain saturation."""

    def __init__(self, message, last_good_time=None):
        super().__init__(message)
        self.last_good_time = last_good_time


class SaturationWindowError(NumericalFailureError):
    """A decay probe was asked to fit past the torus saturation level."""


class UnfittableSeriesError(RuntimeError):
    """A series cannot support a log-log regression (too short or nonpositive)."""


class QuadratureFailureError(RuntimeError):
    """Singular-integral quadrature did not converge under refinement."""

    def __init__(self, message, error_estimate=None):
        super().__init__(message)
        self.error_estimate = error_estimate


class CalibrationError(RuntimeError):
    """Kernel-constant calibration disagreed with the closed form."""


class ConfigError(ValueError):
    """Malformed or out-of-range run configuration."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
