"""Batch front end: ``scatter1d <task> --config run.json [--out PATH] [--format csv|json]``.

Exit codes: 0 success, 1 validation tolerances exceeded, 2 bad configuration,
3 solver failure. Nothing is written unless the task completes.
"""

import argparse
import csv
import io
import json
import math
import sys

import jsonschema
import numpy as np

from . import square_well as sw
from .effective_range import fit_effective_range, integral_params
from .errors import ScatterError, ThresholdError
from .observables import amplitudes_from_phase_shifts, optical_theorem_residual
from .potentials import SquareWell, potential_from_json
from .radial import DEFAULT_H, sweep_phase_shifts
from .spectrum import count_bound_states_nodes, levinson_count

TASKS = ("phase_sweep", "observables", "effective_range", "oracle", "spectrum", "validate")

VALIDATE_TOL = {
    "delta": 1e-6,
    "a_fit": 1e-4,
    "r_fit": 1e-4,
    "a_integral": 1e-6,
    "r_integral": 1e-6,
    "n_bound": 0,
}

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["potential"],
    "additionalProperties": False,
    "properties": {
        "task": {"enum": list(TASKS)},
        "potential": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind", "beta0", "R"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "square_well"},
                        "beta0": _POSITIVE,
                        "R": _POSITIVE,
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "nodes"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "tabulated"},
                        "nodes": {
                            "type": "array",
                            "minItems": 2,
                            "items": {
                                "type": "array",
                                "minItems": 2,
                                "maxItems": 2,
                                "items": {"type": "number"},
                            },
                        },
                    },
                },
            ]
        },
        "channels": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"enum": [0, 1]},
        },
        "k_grid": {
            "type": "object",
            "required": ["min", "max", "count"],
            "additionalProperties": False,
            "properties": {
                "min": _POSITIVE,
                "max": _POSITIVE,
                "count": {"type": "integer", "minimum": 2},
                "spacing": {"enum": ["linear", "log", "k_squared"]},
            },
        },
        "solver": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"h": _POSITIVE, "x_max_margin": _POSITIVE},
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"path": {"type": "string"}, "format": {"enum": ["csv", "json"]}},
        },
    },
}


class ConfigError(Exception):
    def __init__(self, path, message):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


def fnv1a_64(data):
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def config_hash(config):
    """FNV-1a of the canonical JSON form, ignoring the output section."""
    body = {key: value for key, value in config.items() if key != "output"}
    text = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return f"{fnv1a_64(text.encode('ascii')):016x}"


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise ConfigError("", f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"malformed JSON: {exc}") from exc
    validate_config(config)
    return config


def validate_config(config):
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    err = jsonschema.exceptions.best_match(validator.iter_errors(config))
    if err is not None:
        raise ConfigError(".".join(str(p) for p in err.absolute_path), err.message)
    grid = config.get("k_grid")
    if grid is not None and grid["max"] <= grid["min"]:
        raise ConfigError("k_grid.max", "must exceed k_grid.min")
    try:
        potential_from_json(config["potential"])
    except ScatterError as exc:
        raise ConfigError("potential", str(exc)) from exc


def make_k_grid(grid):
    lo, hi, n = grid["min"], grid["max"], grid["count"]
    spacing = grid.get("spacing", "linear")
    if spacing == "log":
        return np.geomspace(lo, hi, n)
    if spacing == "k_squared":
        return np.sqrt(np.linspace(lo * lo, hi * hi, n))
    return np.linspace(lo, hi, n)


class Run:
    """Resolved settings for one task."""

    def __init__(self, task, config):
        self.task = task
        self.config = config
        self.spec = potential_from_json(config["potential"])
        self.R = self.spec.effective_range_R
        self.channels = sorted(config.get("channels", [0, 1]))
        solver = config.get("solver", {})
        self.h = solver.get("h", DEFAULT_H)
        margin = solver.get("x_max_margin")
        self.x_max = None if margin is None else self.R + margin
        grid = config.get("k_grid")
        self.k_grid = None if grid is None else make_k_grid(grid)

    def require_k_grid(self):
        if self.k_grid is None:
            raise ConfigError("k_grid", f"task {self.task} needs a k_grid")
        return self.k_grid

    def require_square_well(self):
        if not isinstance(self.spec, SquareWell):
            raise ConfigError("potential.kind", f"task {self.task} needs a square_well potential")
        return sw.SquareWellParams.from_potential(self.spec)

    def sweep(self, L, ks):
        return sweep_phase_shifts(self.spec, L, ks, h=self.h, x_max=self.x_max)


def _k_function_or_nan(L, k, delta):
    s, c = math.sin(delta), math.cos(delta)
    if L == 1:
        return k * c / s if s != 0 else math.nan
    return k * s / c if c != 0 else math.nan


def task_phase_sweep(run):
    ks = run.require_k_grid()
    rows = []
    for L in run.channels:
        for rec in run.sweep(L, ks):
            rows.append([L, rec.k, rec.delta, rec.branch_offset, rec.k * rec.k,
                         _k_function_or_nan(L, rec.k, rec.delta)])
    return ["L", "k", "delta", "branch_offset", "k2", "k_function"], rows, {}


def task_observables(run):
    ks = run.require_k_grid()
    d0 = [r.delta for r in run.sweep(0, ks)]
    d1 = [r.delta for r in run.sweep(1, ks)]
    amps = amplitudes_from_phase_shifts(ks, np.array(d0), np.array(d1))
    residual = optical_theorem_residual(amps)
    columns = ["k", "delta0", "delta1", "sigma_plus", "sigma_minus", "sigma_tot", "T2", "R2",
               "optical_residual"]
    rows = [list(row) for row in zip(ks, d0, d1, amps.sigma_plus, amps.sigma_minus,
                                     amps.sigma_tot, amps.T2, amps.R2, residual)]
    return columns, rows, {}


def _params_row(p, note=""):
    return [p.L, p.method, p.a, p.inv_a, p.r, note]


def task_effective_range(run):
    rows = []
    meta = {}
    for L in run.channels:
        try:
            fit = fit_effective_range(run.spec, L, k_grid=run.k_grid, h=run.h, x_max=run.x_max)
            rows.append(_params_row(fit))
            meta[f"fit_L{L}_residual_norm"] = fit.fit_diagnostics.get("residual_norm", math.nan)
        except ThresholdError as exc:
            rows.append([L, "low_k_fit", math.inf, exc.inv_a, math.nan, "near_threshold"])
        try:
            rows.append(_params_row(integral_params(run.spec, L, h=run.h)))
        except ScatterError as exc:
            rows.append([L, "integral", math.nan, math.nan, math.nan, type(exc).__name__])
        if isinstance(run.spec, SquareWell):
            params = sw.scattering_params(sw.SquareWellParams.from_potential(run.spec), L)
            rows.append(_params_row(params))
    return ["L", "method", "a", "inv_a", "r", "note"], rows, meta


def task_oracle(run):
    p = run.require_square_well()
    rows = []
    for L in run.channels:
        params = sw.scattering_params(p, L)
        rows.append([L, params.a, params.inv_a, params.r, sw.bound_state_count(p, L)])
    return ["L", "a", "inv_a", "r", "n_bound"], rows, {"beta0_R": p.strength}


def task_spectrum(run):
    rows = []
    for L in run.channels:
        nodes = count_bound_states_nodes(run.spec, L, h=run.h)
        rows.append([L, nodes.method, nodes.n_bound, math.nan])
        lev = levinson_count(run.spec, L, h=run.h)
        rows.append([L, lev.method, lev.n_bound, lev.levinson_residual])
    return ["L", "method", "n_bound", "levinson_residual"], rows, {}


def _angle_gap(a, b):
    return abs((a - b + math.pi / 2) % math.pi - math.pi / 2)


def _rel(value, reference):
    if math.isinf(reference) or reference == 0:
        return abs(value - reference)
    return abs(value / reference - 1.0)


def validation_rows(run):
    p = run.require_square_well()
    ks = run.k_grid if run.k_grid is not None else np.linspace(0.05, 5.0, 50)
    rows = []

    def add(quantity, L, deviation, tol):
        ok = bool(deviation <= tol) if not math.isnan(deviation) else False
        rows.append([quantity, L, deviation, tol, "pass" if ok else "fail"])

    for L in run.channels:
        recs = run.sweep(L, ks)
        gap = max(_angle_gap(r.delta, sw.phase_shift(p, L, r.k)) for r in recs)
        add("delta", L, gap, VALIDATE_TOL["delta"])

        oracle = sw.scattering_params(p, L)
        try:
            fit = fit_effective_range(run.spec, L, h=run.h)
            add("a_fit", L, _rel(fit.a, oracle.a), VALIDATE_TOL["a_fit"])
            add("r_fit", L, _rel(fit.r, oracle.r), VALIDATE_TOL["r_fit"])
        except ScatterError:
            add("a_fit", L, math.nan, VALIDATE_TOL["a_fit"])
            add("r_fit", L, math.nan, VALIDATE_TOL["r_fit"])
        try:
            integral = integral_params(run.spec, L, h=run.h)
            add("a_integral", L, _rel(integral.a, oracle.a), VALIDATE_TOL["a_integral"])
            add("r_integral", L, _rel(integral.r, oracle.r), VALIDATE_TOL["r_integral"])
        except ScatterError:
            add("a_integral", L, math.nan, VALIDATE_TOL["a_integral"])
            add("r_integral", L, math.nan, VALIDATE_TOL["r_integral"])

        nodes = count_bound_states_nodes(run.spec, L, h=run.h).n_bound
        add("n_bound", L, float(abs(nodes - sw.bound_state_count(p, L))), VALIDATE_TOL["n_bound"])
    return rows


def task_validate(run):
    rows = validation_rows(run)
    failed = sum(1 for row in rows if row[-1] == "fail")
    return ["quantity", "L", "max_deviation", "tolerance", "status"], rows, {"failed": failed}


TASK_FUNCS = {
    "phase_sweep": task_phase_sweep,
    "observables": task_observables,
    "effective_range": task_effective_range,
    "oracle": task_oracle,
    "spectrum": task_spectrum,
    "validate": task_validate,
}


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render_csv(task, digest, columns, rows, meta):
    buf = io.StringIO()
    buf.write(f"# scatter1d task={task}\n")
    buf.write(f"# config_hash={digest}\n")
    for key in sorted(meta):
        buf.write(f"# {key}={_fmt(meta[key])}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def render_json(task, digest, columns, rows, meta):
    doc = {
        "task": task,
        "config_hash": digest,
        "meta": {k: _jsonable(v) for k, v in meta.items()},
        "columns": columns,
        "rows": [[_jsonable(v) for v in row] for row in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def execute(task, config):
    """Run ``task`` on a validated config; returns (columns, rows, meta)."""
    if config.get("task", task) != task:
        raise ConfigError("task", f"config says {config['task']!r} but {task!r} was requested")
    return TASK_FUNCS[task](Run(task, config))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scatter1d", description="One-dimensional scattering observables for finite-range wells."
    )
    parser.add_argument("task", choices=TASKS)
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--out", help="output file (default: config output.path, else stdout)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        columns, rows, meta = execute(args.task, config)
    except ConfigError as exc:
        print(f"scatter1d: config error at {exc}", file=sys.stderr)
        return 2
    except ScatterError as exc:
        print(f"scatter1d: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3

    output = config.get("output", {})
    fmt = args.format or output.get("format", "csv")
    path = args.out or output.get("path")
    render = render_json if fmt == "json" else render_csv
    text = render(args.task, config_hash(config), columns, rows, meta)
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.task == "validate" and meta.get("failed", 0):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
