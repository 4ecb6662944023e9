"""Command-line front end: single evaluations and parameter sweeps.

Examples::

    ddc-rates --state sym --trajectory inertial --L 3.14159265
    ddc-rates --state asym --trajectory accelerated --a 2 --L 1 --method both --format json
    ddc-rates --state sym --sweep L:0.1:10:64:log --out sweep.csv

A ``--config`` file holds ``key = value`` lines using the long flag names
(without dashes); flags given on the command line override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .model import AtomPairParams, NonConvergenceError, PreparedState, rate_unit
from .quadrature import QuadratureConfig
from .rates import rate_rr_numeric_record, rate_total
from .worldlines import WorldlinePair

FORMAT_VERSION = "# ddc-rates v1"
COLUMNS = (
    "state", "trajectory", "omega0", "mu", "v", "L", "a",
    "rate_vf", "rate_rr", "rate_total", "rate_total_normalized",
    "method", "eps_residual", "status",
)
NUMERIC_COLUMNS = ("omega0", "mu", "v", "L", "a", "rate_vf", "rate_rr", "rate_total",
                   "rate_total_normalized", "eps_residual")
SWEEP_VARIABLES = ("L", "a", "v", "omega0")

EXIT_OK, EXIT_CONFIG, EXIT_NONCONVERGENCE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"cannot sweep {self.variable!r}; choose from {SWEEP_VARIABLES}")
        if not self.start < self.stop:
            raise ConfigError("sweep start must be below stop")
        if self.steps < 2:
            raise ConfigError("sweep needs at least 2 steps")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"unknown sweep scale {self.scale!r}")
        if self.scale == "log" and not self.start > 0:
            raise ConfigError("log sweeps need a positive start")
        if self.variable != "v" and not self.start > 0:
            raise ConfigError(f"{self.variable} must stay positive")

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) not in (4, 5):
            raise ConfigError(f"sweep must look like VAR:START:STOP:STEPS[:log], got {text!r}")
        try:
            start, stop, steps = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError as exc:
            raise ConfigError(f"bad sweep {text!r}: {exc}") from None
        scale = "linear"
        if len(parts) == 5:
            if parts[4] not in ("log", "linear"):
                raise ConfigError(f"unknown sweep scale {parts[4]!r}")
            scale = parts[4]
        return cls(parts[0], start, stop, steps, scale)

    def grid(self) -> list[float]:
        if self.scale == "log":
            return [float(x) for x in np.geomspace(self.start, self.stop, self.steps)]
        return [float(x) for x in np.linspace(self.start, self.stop, self.steps)]


@dataclass(frozen=True)
class RunConfig:
    state: str = "sym"
    trajectory: str = "inertial"
    omega0: float = 1.0
    mu: float = 1.0
    v: float = 0.0
    x0: float = 0.0
    L: float = 1.0
    a: float = 1.0
    method: str = "analytic"
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    format: str = "csv"
    out: Optional[str] = None

    def validate(self) -> tuple[AtomPairParams, WorldlinePair]:
        if self.method not in ("analytic", "numeric", "both"):
            raise ConfigError(f"unknown method {self.method!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        try:
            params = AtomPairParams(self.omega0, self.mu, PreparedState.from_tag(self.state))
            if self.trajectory == "inertial":
                pair = WorldlinePair.inertial(self.L, v=self.v, x0=self.x0)
            elif self.trajectory == "accelerated":
                pair = WorldlinePair.accelerated(self.L, self.a)
            else:
                raise ConfigError(f"unknown trajectory {self.trajectory!r} (inertial|accelerated)")
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from None
        return params, pair


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.12g}"


def _rounded(x: Optional[float]) -> Optional[float]:
    return None if x is None else float(_fmt(x))


def evaluate(config: RunConfig) -> dict:
    """One output record (values rounded to 12 significant digits) plus its exit code."""
    params, pair = config.validate()
    inertial = pair.kind == "inertial"
    rec = {
        "state": params.state.value,
        "trajectory": pair.kind,
        "omega0": params.omega0,
        "mu": params.mu,
        "v": config.v if inertial else None,
        "L": pair.L,
        "a": None if inertial else config.a,
        "rate_vf": None,
        "rate_rr": None,
        "rate_total": None,
        "rate_total_normalized": None,
        "method": config.method,
        "eps_residual": None,
        "status": "ok",
    }
    qc = config.quadrature
    code = EXIT_OK
    try:
        method = "numeric" if config.method == "numeric" else "analytic"
        rb = rate_total(params, pair, qc, method=method)
        rec.update(
            rate_vf=rb.vf, rate_rr=rb.rr, rate_total=rb.total,
            rate_total_normalized=rb.total / params.unit, eps_residual=rb.eps_residual,
        )
        if config.method == "both":
            check = rate_rr_numeric_record(params, pair, qc)
            rec["eps_residual"] = max(rb.eps_residual or 0.0, check.residual)
            if abs(check.value - rb.rr) > max(10 * check.residual, qc.tol * params.unit):
                rec["status"] = "mismatch"
                code = EXIT_NONCONVERGENCE
    except NonConvergenceError as exc:
        rec["status"] = "nonconverged"
        rec["eps_residual"] = exc.record.residual
        code = EXIT_NONCONVERGENCE
    for k in NUMERIC_COLUMNS:
        rec[k] = _rounded(rec[k])
    return {"record": rec, "code": code}


def _safe_evaluate(config: RunConfig) -> dict:
    try:
        return evaluate(config)
    except ConfigError as exc:
        rec = {k: None for k in COLUMNS}
        rec.update(state=config.state, trajectory=config.trajectory, method=config.method,
                   status=f"error: {exc}")
        return {"record": rec, "code": EXIT_CONFIG}


def run_single(config: RunConfig) -> tuple[int, dict]:
    config.validate()
    result = evaluate(config)
    return result["code"], result["record"]


def _sweep_configs(config: RunConfig, sweep: SweepSpec) -> list[RunConfig]:
    if sweep.variable == "a" and config.trajectory != "accelerated":
        raise ConfigError("sweeping a requires --trajectory accelerated")
    if sweep.variable == "v" and config.trajectory != "inertial":
        raise ConfigError("sweeping v requires --trajectory inertial")
    return [replace(config, **{sweep.variable: x}) for x in sweep.grid()]


def summarize(records: list[dict], xs: list[float]) -> dict:
    """Where |rate_total| sits relative to one isolated pair's baseline mu^2 omega0^2 / (8 pi)."""
    enhanced = weakened = 0
    crossings = []
    prev = None
    for x, rec in zip(xs, records):
        if rec["rate_total"] is None:
            prev = None
            continue
        diff = abs(rec["rate_total"]) - rate_unit(rec["omega0"], rec["mu"])
        if diff > 0:
            enhanced += 1
        elif diff < 0:
            weakened += 1
        if prev is not None and prev[1] * diff < 0:
            crossings.append(_rounded(0.5 * (prev[0] + x)))
        prev = (x, diff)
    return {"enhanced": enhanced, "weakened": weakened, "crossings": crossings}


def run_sweep(config: RunConfig, sweep: SweepSpec, jobs: int = 1) -> tuple[int, list[dict], dict]:
    configs = _sweep_configs(config, sweep)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_safe_evaluate, configs))
    else:
        results = [_safe_evaluate(c) for c in configs]
    records = [r["record"] for r in results]
    summary = {"variable": sweep.variable, **summarize(records, sweep.grid())}
    codes = [r["code"] for r in results]
    code = EXIT_NONCONVERGENCE if EXIT_NONCONVERGENCE in codes else (EXIT_CONFIG if EXIT_CONFIG in codes else EXIT_OK)
    return code, records, summary


# ---------------------------------------------------------------- serialization


def to_csv(records: list[dict], summary: Optional[dict] = None) -> str:
    buf = io.StringIO()
    buf.write(FORMAT_VERSION + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow([_fmt(rec[c]) if c in NUMERIC_COLUMNS else rec[c] for c in COLUMNS])
    if summary is not None:
        crossings = ";".join(_fmt(x) for x in summary["crossings"])
        buf.write(
            f"# summary variable={summary['variable']} enhanced={summary['enhanced']} "
            f"weakened={summary['weakened']} crossings={crossings}\n"
        )
    return buf.getvalue()


def from_csv(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    out = []
    for row in csv.DictReader(lines):
        rec = dict(row)
        for c in NUMERIC_COLUMNS:
            rec[c] = float(rec[c]) if rec[c] != "" else None
        out.append(rec)
    return out


def to_json(records: list[dict], summary: Optional[dict] = None) -> str:
    doc = {"format": FORMAT_VERSION.lstrip("# "), "columns": list(COLUMNS), "records": records}
    if summary is not None:
        doc["summary"] = summary
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------- argument handling


def read_config_file(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{n}: expected key = value")
            key, val = (p.strip() for p in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share the config-error exit status
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="ddc-rates",
        description="Vacuum-fluctuation and radiation-reaction energy rates of two atoms "
        "coupled to the massless scalar vacuum.",
    )
    ap.add_argument("--config", help="key = value file; command-line flags override it")
    ap.add_argument("--state", choices=[s.value for s in PreparedState])
    ap.add_argument("--trajectory", choices=["inertial", "accelerated"])
    ap.add_argument("--omega0", type=float, help="atomic energy gap")
    ap.add_argument("--mu", type=float, help="coupling constant")
    ap.add_argument("--v", type=float, help="common speed (inertial)")
    ap.add_argument("--x0", type=float, help="x offset (inertial)")
    ap.add_argument("--L", type=float, help="transverse separation")
    ap.add_argument("--a", type=float, help="proper acceleration (accelerated)")
    ap.add_argument("--method", choices=["analytic", "numeric", "both"])
    ap.add_argument("--sweep", help="VAR:START:STOP:STEPS[:log] with VAR in L, a, v, omega0")
    ap.add_argument("--format", choices=["csv", "json"])
    ap.add_argument("--out", help="output path (default: stdout)")
    ap.add_argument("--eps0", type=float, help="largest regulator, units of 1/omega0")
    ap.add_argument("--eps-levels", type=int, help="number of halvings in the regulator ladder")
    ap.add_argument("--T-window", dest="T_window", type=float, help="integration window, units of 1/omega0")
    ap.add_argument("--window", choices=["hard", "taper"])
    ap.add_argument("--tol", type=float, help="extrapolation tolerance in units of mu^2 omega0^2/(8 pi)")
    ap.add_argument("--jobs", type=int, help="worker processes for sweeps")
    return ap


_FLOAT_KEYS = ("omega0", "mu", "v", "x0", "L", "a", "eps0", "T_window", "tol")
_INT_KEYS = ("eps_levels", "jobs")


def resolve(args: argparse.Namespace) -> tuple[RunConfig, Optional[SweepSpec], int]:
    merged: dict = read_config_file(args.config) if args.config else {}
    for key, val in vars(args).items():
        if key != "config" and val is not None:
            merged[key] = val
    try:
        for k in _FLOAT_KEYS:
            if k in merged:
                merged[k] = float(merged[k])
        for k in _INT_KEYS:
            if k in merged:
                merged[k] = int(merged[k])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    unknown = set(merged) - set(_FLOAT_KEYS) - set(_INT_KEYS) - {
        "state", "trajectory", "method", "sweep", "format", "out", "window"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    qc_fields = {"eps0": "eps0", "eps_levels": "levels", "T_window": "T_window", "tol": "tol", "window": "window"}
    try:
        qc = QuadratureConfig(**{qc_fields[k]: merged.pop(k) for k in list(merged) if k in qc_fields})
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    sweep = SweepSpec.parse(merged.pop("sweep")) if "sweep" in merged else None
    jobs = merged.pop("jobs", 1)
    return RunConfig(quadrature=qc, **merged), sweep, jobs


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config, sweep, jobs = resolve(args)
        config.validate()
        if sweep is None:
            code, rec = run_single(config)
            records, summary = [rec], None
        else:
            code, records, summary = run_sweep(config, sweep, jobs=jobs)
    except (ConfigError, OSError) as exc:
        print(f"ddc-rates: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = to_json(records, summary) if config.format == "json" else to_csv(records, summary)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for rec in records:
        if rec["status"] != "ok":
            print(f"ddc-rates: {rec['state']} L={rec['L']} a={rec['a']} v={rec['v']}: "
                  f"{rec['status']} (eps residual {rec['eps_residual']})", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
