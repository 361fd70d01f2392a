"""Command-line interface: simulate, fit, conditions, verify, profile.

Exit codes: 0 success, 2 config error, 3 numerical failure (instability,
positivity loss, saturation), 4 verification counterexample.  Failures also
emit a machine-readable JSON object on standard error.  The environment
variable FRACPNP_OUTPUT_DIR overrides the configured output directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import inf
from pathlib import Path

from .config import parse_config
from .diagnostics import (
    check_conditions,
    default_fit_window,
    fit_decay,
    predicted_exponents,
)
from .errors import (
    ConfigError,
    ContractViolationError,
    NumericalFailureError,
    UnfittableSeriesError,
)
from .inequalities import run_suite
from .runio import read_series_csv, run_simulate, write_json
from .spectral import FracExponents

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_COUNTEREXAMPLE = 4


def _fail(kind: str, exc: Exception, code: int) -> int:
    payload = {"schema_version": 1, "error": kind, "message": str(exc)}
    json.dump(payload, sys.stderr)
    sys.stderr.write("\n")
    return code


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def cmd_simulate(args) -> int:
    text = Path(args.config).read_text()
    cfg = parse_config(text)
    out_dir = os.environ.get("FRACPNP_OUTPUT_DIR") or cfg.output_dir
    result, target = run_simulate(cfg, out_dir)
    _emit({
        "schema_version": 1,
        "output_dir": str(target),
        "final_time": result.final.t,
        "rows": len(result.series),
        "saturation_cut_t": None if result.saturation_cut == inf else result.saturation_cut,
        "monitors": {k: v for k, v in result.monitors.items()},
    })
    return EXIT_OK


def cmd_fit(args) -> int:
    series = read_series_csv(args.series)
    window = None
    if args.window:
        try:
            t0, t1 = (float(tok) for tok in args.window.split(":"))
        except ValueError:
            raise ConfigError(f"bad --window (expected t0:t1): {args.window!r}") from None
        window = (t0, t1)
    fit = fit_decay(series, args.column, window)
    _emit(fit.as_dict())
    return EXIT_OK


def cmd_conditions(args) -> int:
    report = check_conditions(args.d, FracExponents(args.alpha, args.beta))
    payload = report.as_dict()
    payload["predicted"] = [
        {"family": p.family, "parameter": p.parameter, "exponent": p.exponent}
        for p in predicted_exponents(args.d, FracExponents(args.alpha, args.beta))
    ]
    _emit(payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.seed)
    if args.out:
        write_json(report, args.out)
        summary = dict(report)
        summary.pop("checks")
        _emit(summary)
    else:
        _emit(report)
    return EXIT_COUNTEREXAMPLE if report["counterexamples"] else EXIT_OK


def cmd_profile(args) -> int:
    run_dir = Path(args.run)
    series = read_series_csv(run_dir / "series.csv")
    manifest = json.loads((run_dir / "manifest.json").read_text())
    volume = manifest["volume"]
    window = default_fit_window(series, volume)
    cfg = parse_config(manifest["config"])
    exps = cfg.solver.exps
    big = exps.largest
    predicted = (cfg.grid.d - 1.0) / big - 1.0
    out = {
        "schema_version": 1,
        "predicted_exponent": predicted,
        "assertable": predicted > 0,
        "window_t0": window[0],
        "window_t1": window[1],
        "columns": {},
    }
    for col in ("u_profile_l2", "v_profile_l2"):
        values = series.column(col)
        entry = {"max_value": float(values.max())}
        try:
            fit = fit_decay(series, col, window)
            entry.update(fit.as_dict())
            if predicted > 0:
                entry["verdict"] = "pass" if -fit.exponent >= predicted - 0.3 else "fail"
            else:
                entry["verdict"] = "recorded"
        except UnfittableSeriesError as exc:
            entry["verdict"] = "recorded"
            entry["note"] = str(exc)
        out["columns"][col] = entry
    _emit(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracpnp",
        description="Pseudo-spectral fractional drift-diffusion solver and verification harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one simulation from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="fit a decay exponent on a series CSV column")
    p.add_argument("--series", required=True)
    p.add_argument("--column", required=True)
    p.add_argument("--window", default=None, help="t0:t1")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("conditions", help="evaluate the eligibility conditions")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("verify", help="run an inequality verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the full report JSON here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="fit the linear-profile difference of a finished run")
    p.add_argument("--run", required=True)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ContractViolationError, FileNotFoundError) as exc:
        return _fail("config", exc, EXIT_CONFIG)
    except (NumericalFailureError, UnfittableSeriesError) as exc:
        return _fail("numerical", exc, EXIT_NUMERICAL)


if __name__ == "__main__":
    sys.exit(main())
