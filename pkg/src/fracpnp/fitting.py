"""Log-log power-law regression shared by the probes and the diagnostics."""

from __future__ import annotations

import numpy as np

from .errors import UnfittableSeriesError

MIN_SAMPLES = 8


def powerlaw_fit(t, values):
    """OLS of log(values) against log(1 + t).

    Returns (slope, amplitude, r_squared) so that values ~ amplitude*(1+t)^slope.
    Raises UnfittableSeriesError for short or nonpositive series.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.size != values.size:
        raise UnfittableSeriesError("time and value arrays differ in length")
    if t.size < MIN_SAMPLES:
        raise UnfittableSeriesError(
            f"unfittable series: {t.size} samples, need at least {MIN_SAMPLES}"
        )
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise UnfittableSeriesError("unfittable series: nonpositive or non-finite values")
    x = np.log1p(t)
    y = np.log(values)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 if total == 0 else 1.0 - float(np.sum(resid**2)) / float(total)
    return float(slope), float(np.exp(intercept)), float(min(1.0, max(0.0, r2)))
