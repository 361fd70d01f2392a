"""Line-oriented run configuration: dotted `key = value` pairs.

Unknown keys are errors; missing keys take the documented defaults.  A config
serializes back to text that parses to an equal RunConfig, so files round-trip
exactly.  Gaussian components are written as semicolon-separated bumps, each
`amplitude center_1 .. center_d width`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from .diagnostics import DiagnosticsSpec
from .errors import ConfigError, ContractViolationError
from .solver import Bump, InitialData, SolverParams
from .spectral import FracExponents, GridSpec

_GRID_KEYS = ("grid.d", "grid.n", "grid.half_length")
_EXP_KEYS = ("exponents.alpha", "exponents.beta")
_INIT_KEYS = (
    "init.family", "init.seed", "init.u_components", "init.v_components",
    "init.baseline_u", "init.baseline_v", "init.modes", "init.max_mode", "init.ripple",
)
_SOLVER_KEYS = (
    "solver.dt", "solver.t_end", "solver.dealias_fraction", "solver.output_stride",
    "solver.checkpoint_stride", "solver.pos_tol", "solver.tail_tol",
    "solver.boundary_tol", "solver.cfl",
)
_DIAG_KEYS = ("diagnostics.p_list", "diagnostics.s_list", "diagnostics.window_fraction")
_OUTPUT_KEYS = ("output.dir",)
KNOWN_KEYS = frozenset(
    _GRID_KEYS + _EXP_KEYS + _INIT_KEYS + _SOLVER_KEYS + _DIAG_KEYS + _OUTPUT_KEYS
)

_REQUIRED = ("grid.d", "grid.n", "grid.half_length", "exponents.alpha", "exponents.beta")

_SOLVER_DEFAULTS = {
    "solver.dt": 0.02,
    "solver.t_end": 10.0,
    "solver.dealias_fraction": 2.0 / 3.0,
    "solver.output_stride": 10,
    "solver.checkpoint_stride": 0,
    "solver.pos_tol": 1e-8,
    "solver.tail_tol": 1e-6,
    "solver.boundary_tol": 1e-6,
    "solver.cfl": 0.5,
}


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs, validated at construction time."""

    grid: GridSpec
    init: InitialData
    solver: SolverParams
    diagnostics: DiagnosticsSpec = field(default_factory=DiagnosticsSpec)
    output_dir: str = "run_output"


def _parse_float(raw, key, line):
    try:
        val = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {raw!r}", line=line) from None
    return val


def _parse_int(raw, key, line):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: not an integer: {raw!r}", line=line) from None


def _parse_components(raw, d, key, line):
    bumps = []
    for part in raw.split(";"):
        part = part.strip()
        if not part:
            continue
        nums = part.split()
        if len(nums) != d + 2:
            raise ConfigError(
                f"{key}: each bump needs amplitude, {d} center coordinate(s), width; got {part!r}",
                line=line,
            )
        vals = [_parse_float(v, key, line) for v in nums]
        try:
            bumps.append(Bump(vals[0], tuple(vals[1:-1]), vals[-1]))
        except ContractViolationError as exc:
            raise ConfigError(f"{key}: {exc}", line=line) from None
    return tuple(bumps)


def _parse_float_list(raw, key, line):
    out = []
    for tok in raw.split():
        out.append(inf if tok in ("inf", "Inf") else _parse_float(tok, key, line))
    if not out:
        raise ConfigError(f"{key}: empty list", line=line)
    return tuple(out)


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a config; errors carry the offending line."""
    pairs = {}
    lines = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        stripped = rawline.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"malformed line (expected key = value): {stripped!r}", line=lineno)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", line=lineno)
        if key in pairs:
            raise ConfigError(f"duplicate key {key!r}", line=lineno)
        if not value:
            raise ConfigError(f"{key}: missing value", line=lineno)
        pairs[key] = value
        lines[key] = lineno
    for key in _REQUIRED:
        if key not in pairs:
            raise ConfigError(f"missing required key {key!r}")

    def want(key, parser, default=None):
        if key not in pairs:
            return default
        return parser(pairs[key], key, lines[key])

    d = _parse_int(pairs["grid.d"], "grid.d", lines["grid.d"])
    n = _parse_int(pairs["grid.n"], "grid.n", lines["grid.n"])
    half_length = _parse_float(pairs["grid.half_length"], "grid.half_length", lines["grid.half_length"])
    try:
        grid = GridSpec(d, n, half_length)
    except ContractViolationError as exc:
        raise ConfigError(str(exc), line=lines["grid.d"]) from None

    alpha = _parse_float(pairs["exponents.alpha"], "exponents.alpha", lines["exponents.alpha"])
    beta = _parse_float(pairs["exponents.beta"], "exponents.beta", lines["exponents.beta"])
    try:
        exps = FracExponents(alpha, beta)
    except ContractViolationError as exc:
        raise ConfigError(str(exc), line=lines["exponents.alpha"]) from None

    family = pairs.get("init.family", "gaussian_mixture")
    try:
        init = InitialData(
            family=family,
            u_components=want("init.u_components", lambda r, k, l: _parse_components(r, d, k, l), ()),
            v_components=want("init.v_components", lambda r, k, l: _parse_components(r, d, k, l), ()),
            seed=want("init.seed", _parse_int, 0),
            baseline_u=want("init.baseline_u", _parse_float, 1.0),
            baseline_v=want("init.baseline_v", _parse_float, 1.0),
            modes=want("init.modes", _parse_int, 4),
            max_mode=want("init.max_mode", _parse_int, 4),
            ripple=want("init.ripple", _parse_float, 0.5),
        )
    except ContractViolationError as exc:
        raise ConfigError(str(exc), line=lines.get("init.family")) from None

    solver_kwargs = {}
    for key, default in _SOLVER_DEFAULTS.items():
        name = key.split(".", 1)[1]
        parser = _parse_int if isinstance(default, int) else _parse_float
        solver_kwargs[name] = want(key, parser, default)
    try:
        solver = SolverParams(exps=exps, **solver_kwargs)
    except ContractViolationError as exc:
        raise ConfigError(str(exc)) from None

    try:
        diagnostics = DiagnosticsSpec(
            p_list=want("diagnostics.p_list", _parse_float_list, DiagnosticsSpec.p_list),
            s_list=want("diagnostics.s_list", _parse_float_list, DiagnosticsSpec.s_list),
            window_fraction=want("diagnostics.window_fraction", _parse_float,
                                 DiagnosticsSpec.window_fraction),
        )
    except ContractViolationError as exc:
        raise ConfigError(str(exc)) from None

    return RunConfig(
        grid=grid,
        init=init,
        solver=solver,
        diagnostics=diagnostics,
        output_dir=pairs.get("output.dir", "run_output"),
    )


def _fmt_value(v) -> str:
    if v == inf:
        return "inf"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def serialize_config(cfg: RunConfig) -> str:
    """Emit the parseable text form; parse(serialize(cfg)) == cfg."""
    out = []
    out.append(f"grid.d = {cfg.grid.d}")
    out.append(f"grid.n = {cfg.grid.n}")
    out.append(f"grid.half_length = {_fmt_value(cfg.grid.half_length)}")
    out.append(f"exponents.alpha = {_fmt_value(cfg.solver.exps.alpha)}")
    out.append(f"exponents.beta = {_fmt_value(cfg.solver.exps.beta)}")
    out.append(f"init.family = {cfg.init.family}")
    out.append(f"init.seed = {cfg.init.seed}")
    for name, comps in (("u_components", cfg.init.u_components),
                        ("v_components", cfg.init.v_components)):
        if comps:
            rendered = " ; ".join(
                " ".join([_fmt_value(b.amplitude)]
                         + [_fmt_value(c) for c in b.center]
                         + [_fmt_value(b.width)])
                for b in comps
            )
            out.append(f"init.{name} = {rendered}")
    if cfg.init.family == "band_limited_positive":
        out.append(f"init.baseline_u = {_fmt_value(cfg.init.baseline_u)}")
        out.append(f"init.baseline_v = {_fmt_value(cfg.init.baseline_v)}")
        out.append(f"init.modes = {cfg.init.modes}")
        out.append(f"init.max_mode = {cfg.init.max_mode}")
        out.append(f"init.ripple = {_fmt_value(cfg.init.ripple)}")
    for key in _SOLVER_KEYS:
        name = key.split(".", 1)[1]
        out.append(f"{key} = {_fmt_value(getattr(cfg.solver, name))}")
    out.append("diagnostics.p_list = " + " ".join(_fmt_value(p) for p in cfg.diagnostics.p_list))
    out.append("diagnostics.s_list = " + " ".join(_fmt_value(s) for s in cfg.diagnostics.s_list))
    out.append(f"diagnostics.window_fraction = {_fmt_value(cfg.diagnostics.window_fraction)}")
    out.append(f"output.dir = {cfg.output_dir}")
    return "\n".join(out) + "\n"
