"""Command-line front end.

Subcommands: spectrum, trace, expand, verify, sweep. Model parameters are
given as flags (--nu, --b, --r-inner, --theta1, --k1, --k2, --beta, --m,
--L) and must belong to the chosen --model. A JSON config file (--config)
supplies defaults that flags override; a JSON output file is itself a
valid config.

Exit codes: 0 ok, 1 invalid configuration, 2 numerical failure,
3 verification failure.

CSV columns:
  spectrum  index, branch, value, multiplicity
  trace     t, value, tail_bound, terms_used, method
  expand    power, log, coefficient
  verify    criterion, title, passed, checks, failed, worst_check, worst_error, worst_tolerance
  sweep     param, param_value, t, value, tail_bound
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import acceptance, asymptotics, heattrace as ht, spectra, verify as vf
from ._parallel import parallel_map
from .errors import DomainError, HeatlabError

SCHEMA_VERSION = 1
COMMANDS = ("spectrum", "trace", "expand", "verify", "sweep")
FORMATS = ("table", "csv", "json")

# flag name -> model field name
MODEL_FLAGS = {"nu": "nu", "b": "b", "r_inner": "R", "theta1": "theta1", "k1": "k1", "k2": "k2",
               "beta": "beta", "m": "m", "L": "L"}

COLUMNS = {
    "spectrum": ("index", "branch", "value", "multiplicity"),
    "trace": ("t", "value", "tail_bound", "terms_used", "method"),
    "expand": ("power", "log", "coefficient"),
    "verify": ("criterion", "title", "passed", "checks", "failed", "worst_check", "worst_error",
               "worst_tolerance"),
    "sweep": ("param", "param_value", "t", "value", "tail_bound"),
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: Optional[dict] = None
    t_grid: list = field(default_factory=list)
    index_range: Optional[list] = None
    tol: float = ht.DEFAULT_TOL
    output_format: str = "table"
    output_path: Optional[str] = None
    relative: bool = False
    method: str = "direct"
    suite: str = "acceptance"
    criteria: Optional[list] = None
    param: Optional[str] = None
    values: list = field(default_factory=list)

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"command must be one of {COMMANDS}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if not (1e-15 < self.tol < 1e-2):
            raise ConfigError("tol must lie in (1e-15, 1e-2)")
        for name in ("t_grid", "values"):
            grid = getattr(self, name)
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ConfigError(f"{name} must be strictly increasing")
        needs_model = self.command in ("spectrum", "trace", "expand", "sweep") or (
            self.command == "verify" and self.suite == "cross-check")
        if needs_model and not self.model:
            raise ConfigError(f"{self.command} needs --model")
        if self.command in ("trace", "sweep") or (self.command == "verify" and self.suite == "cross-check"):
            if not self.t_grid:
                raise ConfigError(f"{self.command} needs --t")
        if self.command == "spectrum" and not self.index_range:
            raise ConfigError("spectrum needs --k LO..HI")
        if self.command == "sweep" and (not self.param or not self.values):
            raise ConfigError("sweep needs --param and --values")
        if self.method not in ("direct", "closed", "theta"):
            raise ConfigError("method must be direct, closed or theta")
        if self.suite not in ("acceptance", "cross-check"):
            raise ConfigError("suite must be acceptance or cross-check")
        return self

    def build_model(self):
        try:
            return spectra.model_from_dict(self.model)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None


# -- parsing -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _float_list(text: str) -> list[float]:
    text = text.strip()
    if text.startswith("geom:"):
        try:
            lo, hi, n = text[5:].split(":")
            lo, hi, n = float(lo), float(hi), int(n)
        except ValueError:
            raise ConfigError(f"bad geometric grid {text!r}; use geom:LO:HI:N") from None
        if n < 2 or not (0 < lo < hi):
            raise ConfigError("geometric grid needs 0 < LO < HI and N >= 2")
        return [float(x) for x in np.geomspace(lo, hi, n)]
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"bad number list {text!r}") from None


def _index_range(text: str) -> list[int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"bad index range {text!r}; use LO..HI") from None
    if hi < lo:
        raise ConfigError("index range must have LO <= HI")
    return [lo, hi]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--model", choices=sorted(spectra.MODEL_TYPES))
    for flag in MODEL_FLAGS:
        kind = int if flag == "m" else float
        common.add_argument("--" + flag.replace("_", "-"), dest=flag, type=kind)
    common.add_argument("--tol", type=float)
    common.add_argument("--format", dest="output_format", choices=FORMATS)
    common.add_argument("--output", dest="output_path")

    parser = _Parser(prog="heatlab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter, allow_abbrev=False)
    parser.add_argument("--config", dest="top_config", help="JSON config file to rerun")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("spectrum", parents=[common], help="list eigenvalues", allow_abbrev=False)
    p.add_argument("--k", dest="index_range", help="index range LO..HI (shells for oscillators)")
    for name in ("trace", "sweep"):
        p = sub.add_parser(name, parents=[common], help=f"heat {name}", allow_abbrev=False)
        p.add_argument("--t", dest="t_grid", help="comma list or geom:LO:HI:N")
        p.add_argument("--relative", action="store_true", default=None)
        p.add_argument("--method", choices=("direct", "closed", "theta"))
        if name == "sweep":
            p.add_argument("--param", help="model parameter to vary")
            p.add_argument("--values", help="comma list or geom:LO:HI:N")
    p = sub.add_parser("expand", parents=[common], help="expansion coefficients", allow_abbrev=False)
    p.add_argument("--relative", action="store_true", default=None)
    p = sub.add_parser("verify", parents=[common], help="run verification suites", allow_abbrev=False)
    p.add_argument("--suite", choices=("acceptance", "cross-check"))
    p.add_argument("--criteria", help="comma list of criterion numbers")
    p.add_argument("--t", dest="t_grid", help="t grid for cross-check")
    return parser


def _join_negative_values(argv):
    # let "--k -5..5" through: argparse would read "-5..5" as an option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--k", "--values", "--t") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    # an output document carries its config under "config"
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    data.pop("schema_version", None)
    return data


def config_from_args(argv) -> RunConfig:
    args = build_parser().parse_args(_join_negative_values(list(argv)))
    path = getattr(args, "config", None) or args.top_config
    base = load_config(path) if path else {}
    command = args.command or base.get("command")
    if command is None:
        raise ConfigError("no command given")
    if args.command and base.get("command") and args.command != base["command"]:
        base = {k: v for k, v in base.items() if k in ("model", "tol", "output_format")}
    data = dict(base)
    data["command"] = command
    valid = {f for f in RunConfig.__dataclass_fields__}
    unknown = set(data) - valid
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")

    model = dict(data.get("model") or {})
    if getattr(args, "model", None):
        if model.get("kind") not in (None, args.model):
            model = {}
        model["kind"] = args.model
    given = {flag: getattr(args, flag) for flag in MODEL_FLAGS if getattr(args, flag, None) is not None}
    if given:
        if "kind" not in model:
            raise ConfigError("model parameters given without --model")
        allowed = spectra.model_params(model["kind"])
        for flag, value in given.items():
            name = MODEL_FLAGS[flag]
            if name not in allowed:
                raise ConfigError(f"--{flag.replace('_', '-')} does not apply to model {model['kind']!r}")
            model[name] = value
    if model:
        data["model"] = model

    for key in ("tol", "output_format", "output_path", "relative", "method", "suite", "param"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if getattr(args, "t_grid", None) is not None:
        data["t_grid"] = _float_list(args.t_grid)
    if getattr(args, "values", None) is not None:
        data["values"] = _float_list(args.values)
    if getattr(args, "index_range", None) is not None:
        data["index_range"] = _index_range(args.index_range)
    if getattr(args, "criteria", None) is not None:
        try:
            data["criteria"] = [int(x) for x in args.criteria.split(",")]
        except ValueError:
            raise ConfigError("criteria must be a comma list of integers") from None
    try:
        cfg = RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return cfg.validate()


# -- commands ----------------------------------------------------------------------


def _spectrum_rows(model, lo, hi):
    rows = []
    kind = model.kind
    for k in range(lo, hi + 1):
        if kind in ("ab-disk", "metric-disk", "annulus-partial", "const-field-disk"):
            rows.append({"index": k, "branch": "", "value": spectra.eigenvalue_at(model, k), "multiplicity": 1})
        elif kind in ("cylinder", "annulus-full"):
            for branch in "+-":
                rows.append({"index": k, "branch": branch, "value": spectra.eigenvalue_at(model, k, branch),
                             "multiplicity": 1})
        elif kind == "sphere-landau":
            if k < 0:
                raise ConfigError("sphere-landau indices must be nonnegative")
            value, mult = spectra.sphere_landau_eig(model.m, k)
            rows.append({"index": k, "branch": "", "value": value, "multiplicity": mult})
        elif kind in ("iso-oscillator", "aniso-oscillator"):
            if k < 0:
                raise ConfigError("oscillator shell indices must be nonnegative")
            for n1 in range(k + 1):
                rows.append({"index": k, "branch": f"n1={n1},n2={k - n1}",
                             "value": spectra.eigenvalue_at(model, n1, k - n1), "multiplicity": 1})
        elif kind == "ab-oscillator":
            if k < 0:
                raise ConfigError("ab-oscillator shell indices must be nonnegative")
            for m in range(-k, k + 1):
                n = k - abs(m)
                rows.append({"index": k, "branch": f"m={m},n={n}",
                             "value": spectra.eigenvalue_at(model, m, n), "multiplicity": 1})
    return rows


def _trace_one(model, t, cfg):
    if cfg.method == "direct" or cfg.relative:
        res = ht.trace(model, t, cfg.tol, relative=cfg.relative)
        return res.value, res.tail_bound, res.terms_used, res.method
    if cfg.method == "theta":
        if model.kind != "sphere-landau":
            raise ConfigError("the theta method is available for sphere-landau only")
        res = ht.sphere_trace(model.m, t, "theta", cfg.tol)
        return res.value, res.tail_bound, res.terms_used, res.method
    value = ht.closed_form_trace(model, t)
    if value is None:
        raise ConfigError(f"model {model.kind!r} has no closed form")
    return value, 0.0, 1, "closed_form"


def run(cfg: RunConfig):
    """Execute a validated config; returns (rows, exit_status)."""
    if cfg.command == "spectrum":
        return _spectrum_rows(cfg.build_model(), *cfg.index_range), 0
    if cfg.command == "trace":
        model = cfg.build_model()
        results = parallel_map(lambda t: _trace_one(model, t, cfg), cfg.t_grid)
        return [dict(zip(COLUMNS["trace"], (t, *r))) for t, r in zip(cfg.t_grid, results)], 0
    if cfg.command == "expand":
        exp = asymptotics.expansion_for(cfg.build_model(), relative=cfg.relative)
        rows = [{"power": str(x.power), "log": x.has_log, "coefficient": x.coefficient} for x in exp.terms]
        return rows, 0
    if cfg.command == "sweep":
        base = dict(cfg.model)
        name = MODEL_FLAGS.get(cfg.param.replace("-", "_"), cfg.param)
        if name not in spectra.model_params(base["kind"]):
            raise ConfigError(f"parameter {cfg.param!r} does not apply to model {base['kind']!r}")
        jobs = []
        for v in cfg.values:
            try:
                model = spectra.model_from_dict({**base, name: int(v) if name == "m" else v})
            except DomainError as exc:
                raise ConfigError(str(exc)) from None
            jobs += [(v, model, t) for t in cfg.t_grid]
        results = parallel_map(lambda job: _trace_one(job[1], job[2], cfg), jobs)
        rows = [{"param": name, "param_value": v, "t": t, "value": r[0], "tail_bound": r[1]}
                for (v, _, t), r in zip(jobs, results)]
        return rows, 0
    if cfg.command == "verify":
        if cfg.suite == "cross-check":
            reports = vf.cross_check(cfg.build_model(), cfg.t_grid)
            failed = sum(not r.passed for r in reports)
            worst = max(reports, key=lambda r: r.abs_error / r.tolerance if r.tolerance else math.inf)
            rows = [{"criterion": 0, "title": f"cross-check {cfg.model['kind']}", "passed": failed == 0,
                     "checks": len(reports), "failed": failed, "worst_check": worst.check_name,
                     "worst_error": worst.abs_error, "worst_tolerance": worst.tolerance}]
            return rows, 0 if failed == 0 else 3
        if cfg.criteria and any(not 1 <= c <= len(acceptance.CRITERIA) for c in cfg.criteria):
            raise ConfigError(f"criteria must lie in 1..{len(acceptance.CRITERIA)}")
        rows = []
        for res in acceptance.run_acceptance(cfg.criteria):
            w = res.worst()
            rows.append({"criterion": res.number, "title": res.title, "passed": res.passed,
                         "checks": len(res.blocking), "failed": sum(not r.passed for r in res.blocking),
                         "worst_check": w.check_name, "worst_error": w.abs_error,
                         "worst_tolerance": w.tolerance})
        return rows, 0 if all(r["passed"] for r in rows) else 3
    raise ConfigError(f"unknown command {cfg.command!r}")


# -- output ------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "" if value is None else str(value)


def _json(obj) -> str:
    # hand-rolled so floats always carry 17 significant digits
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    return json.dumps(str(obj))


def render(cfg: RunConfig, rows: list[dict]) -> str:
    cols = COLUMNS[cfg.command]
    if cfg.output_format == "json":
        config = {k: v for k, v in asdict(cfg).items() if k != "output_path"}
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "config": config,
               "columns": list(cols), "rows": [[row[c] for c in cols] for row in rows]}
        return _json(doc) + "\n"
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in cols])
        return buf.getvalue()
    cells = [list(cols)] + [[_fmt(row[c]) for c in cols] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cols))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
        rows, status = run(cfg)
        text = render(cfg, rows)
    except (ConfigError, DomainError) as exc:
        print(f"heatlab: invalid configuration: {exc}", file=sys.stderr)
        return 1
    except (HeatlabError, ArithmeticError) as exc:
        print(f"heatlab: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
