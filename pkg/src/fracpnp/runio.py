"""Persistence: CSV series, raw float64 checkpoints, JSON reports, manifests.

CSV columns are a stable contract (the exact header strings from the
diagnostics column list); floats are written with repr so identical runs are
bit-identical on the same platform.  Checkpoints are raw little-endian
float64 arrays in row-major order, one file per field, with a JSON sidecar
header.  Every output file is listed in the run manifest with a sha256.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, serialize_config
from .diagnostics import NormSeries
from .errors import ConfigError
from .solver import SimState, SimResult, make_state, simulate
from .spectral import GridSpec, RealField

SCHEMA_VERSION = 1


def write_series_csv(series: NormSeries, path):
    path = Path(path)
    with path.open("w") as fh:
        fh.write(",".join(series.columns) + "\n")
        for row in series.data:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_series_csv(path) -> NormSeries:
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip()
        if not header:
            raise ConfigError(f"empty series file {path}")
        columns = header.split(",")
        rows = []
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(tok) for tok in line.split(",")])
    return NormSeries(columns, rows)


def write_json(obj, path):
    path = Path(path)
    with path.open("w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def checkpoint_paths(out_dir, index: int):
    base = Path(out_dir)
    stem = f"checkpoint_{index:06d}"
    return (base / f"{stem}.json", base / f"{stem}_u.f64", base / f"{stem}_v.f64")


def write_checkpoint(out_dir, index: int, state: SimState, alpha: float, beta: float):
    header_path, u_path, v_path = checkpoint_paths(out_dir, index)
    grid = state.u.grid
    header = {
        "schema_version": SCHEMA_VERSION,
        "grid": {"d": grid.d, "n": grid.n, "half_length": grid.half_length},
        "alpha": alpha,
        "beta": beta,
        "time": state.t,
        "layout": "row-major float64 little-endian",
        "normalization": "coeff(0) = mean of the field",
        "fields": {"u": u_path.name, "v": v_path.name},
    }
    write_json(header, header_path)
    u_path.write_bytes(np.ascontiguousarray(state.u.values, dtype="<f8").tobytes())
    v_path.write_bytes(np.ascontiguousarray(state.v.values, dtype="<f8").tobytes())
    return [header_path, u_path, v_path]


def read_checkpoint(header_path):
    header_path = Path(header_path)
    header = json.loads(header_path.read_text())
    grid = GridSpec(**header["grid"])
    fields = {}
    for name in ("u", "v"):
        raw = (header_path.parent / header["fields"][name]).read_bytes()
        vals = np.frombuffer(raw, dtype="<f8").reshape(grid.shape)
        fields[name] = RealField(grid, vals.copy())
    state = make_state(header["time"], fields["u"], fields["v"])
    return state, header


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _json_safe(value):
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def write_run_outputs(cfg: RunConfig, result: SimResult, out_dir) -> Path:
    """series.csv, checkpoints, and a manifest with checksums of everything."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    series_path = out_dir / "series.csv"
    write_series_csv(result.series, series_path)
    files.append(series_path)
    for idx, state in enumerate(result.checkpoints):
        files.extend(
            write_checkpoint(out_dir, idx, state, cfg.solver.exps.alpha, cfg.solver.exps.beta)
        )
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "numpy_version": np.__version__,
        "config": serialize_config(cfg),
        "monitors": {k: _json_safe(v) for k, v in result.monitors.items()},
        "saturation_cut_t": _json_safe(result.saturation_cut),
        "final_time": result.final.t,
        "volume": cfg.grid.volume,
        "files": {p.name: _sha256(p) for p in files},
    }
    write_json(manifest, out_dir / "manifest.json")
    return out_dir


def run_simulate(cfg: RunConfig, out_dir=None) -> tuple:
    """Run one simulation from a config and persist all artifacts."""
    result = simulate(cfg.init, cfg.grid, cfg.solver, cfg.diagnostics)
    target = Path(out_dir) if out_dir is not None else Path(cfg.output_dir)
    write_run_outputs(cfg, result, target)
    return result, target
