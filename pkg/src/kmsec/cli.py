"""Command-line front end: ``kmsec {capacity,sweep,sample,validate}``.

Every subcommand writes CSV (``#``-prefixed provenance lines, then a fixed
header) or JSON. Parameters can also come from a ``--config`` file of
``key = value`` lines whose keys are the long flag names; flags given on the
command line win.

Exit codes: 0 ok, 1 validation failure, 2 domain error, 3 convergence
failure, 4 partial sweep failure, 5 I/O error.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channel import ChannelParams, sample
from .effcap import (
    CapacityResult,
    EvalOptions,
    Method,
    QosParams,
    capacity,
    capacity_quadrature,
)
from .errors import ConvergenceError, DomainError, IntegrandError, KmsecError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_PARTIAL = 4
EXIT_IO = 5

# fixed, documented output schema of `capacity` and `sweep`
ROW_COLUMNS = (
    "kappa",
    "mu",
    "m",
    "avg_snr",
    "avg_snr_db",
    "A",
    "requested_method",
    "method",
    "R",
    "error_estimate",
    "route",
    "note",
    "paranoid_discrepancy",
    "error",
    "wall_time_s",
)
VALIDATE_COLUMNS = (
    "point",
    "kappa",
    "mu",
    "m",
    "avg_snr_db",
    "A",
    "check",
    "method",
    "value",
    "reference",
    "discrepancy",
    "threshold",
    "passed",
)
SWEEP_AXES = ("avg_snr_db", "kappa", "mu", "m", "a_cap")

# keys of a config file that are mutually exclusive with a command-line flag
_EXCLUSIVE = {
    "snr": ("snr_db",),
    "snr_db": ("snr",),
    "A": ("theta", "block_t", "bandwidth"),
    "theta": ("A",),
    "block_t": ("A",),
    "bandwidth": ("A",),
}


class UsageError(DomainError):
    """Inconsistent or missing command-line parameters."""


# --------------------------------------------------------------------------
# sweep specification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    """One curve family: ``swept_axis`` takes ``values``; everything else is ``fixed``."""

    swept_axis: str
    values: tuple
    fixed: ChannelParams
    qos: QosParams
    methods: tuple

    def __post_init__(self):
        if self.swept_axis not in SWEEP_AXES:
            raise UsageError(f"unknown sweep axis {self.swept_axis!r}; choose from {SWEEP_AXES}")
        if not self.values:
            raise UsageError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise UsageError("sweep values must be strictly increasing")
        if not self.methods:
            raise UsageError("sweep needs at least one method")
        for v in self.values:
            self.point(v)

    def point(self, value: float) -> tuple[ChannelParams, QosParams]:
        if self.swept_axis == "a_cap":
            return self.fixed, QosParams(value)
        if self.swept_axis == "avg_snr_db":
            return self.fixed.replace(avg_snr=db_to_linear(value)), self.qos
        return self.fixed.replace(**{self.swept_axis: value}), self.qos


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-10
    seed: int = 0
    output_format: str = "csv"
    output_path: str | None = None
    paranoid: bool = False
    mc_count: int = 1_000_000
    jobs: int = 1

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("tol must be positive")
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.output_format!r}")


@dataclass
class Task:
    p: ChannelParams
    q: QosParams
    method: Method


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


# --------------------------------------------------------------------------
# presets
# --------------------------------------------------------------------------

FIG_SNR_DB = tuple(float(v) for v in range(0, 41, 5))
FIG_METHODS = (Method.QUADRATURE, Method.EGBMGF, Method.HIGH_SNR, Method.MONTE_CARLO)


def fig1_specs() -> list[SweepSpec]:
    """kappa = 1, mu = 2; curves over m in {0.5, 1, 5} and A in {1, 5}."""
    specs = []
    for a_cap in (1.0, 5.0):
        for m in (0.5, 1.0, 5.0):
            specs.append(
                SweepSpec("avg_snr_db", FIG_SNR_DB, ChannelParams(1.0, 2.0, m, 1.0), QosParams(a_cap), FIG_METHODS)
            )
    return specs


def fig2_specs() -> list[SweepSpec]:
    """m = 1, A = 1; curves over mu in {1, 2, 4} and kappa in {1, 5}."""
    specs = []
    for kappa in (1.0, 5.0):
        for mu in (1.0, 2.0, 4.0):
            specs.append(
                SweepSpec("avg_snr_db", FIG_SNR_DB, ChannelParams(kappa, mu, 1.0, 1.0), QosParams(1.0), FIG_METHODS)
            )
    return specs


PRESETS = {"fig1": fig1_specs, "fig2": fig2_specs}

# (kappa, mu, m, A, snr_db)
VALIDATE_GRIDS = {
    "default": (
        (1.0, 2.0, 1.0, 1.0, 10.0),
        (0.5, 1.0, 0.5, 2.0, 20.0),
        (0.5, 1.5, 0.8, 2.5, 17.0),
        (2.0, 1.0, 3.0, 1.0, 10.0),
        (1.0, 2.0, 2.0, 1.0, 10.0),
        (5.0, 2.5, 3.5, 0.5, 30.0),
    ),
    # full product of the criterion-2 axes (3 x 4 x 2 x 2 = 48 points)
    "acceptance": tuple(
        (k, mu, m, a, db)
        for k in (0.5, 1.0, 5.0)
        for mu, m in ((2.0, 1.0), (1.0, 0.5), (1.5, 0.8), (2.5, 3.5))
        for a in (0.5, 2.0)
        for db in (10.0, 30.0)
    ),
}
VALIDATE_CHECKS = ("exact", "series", "monte_carlo")


def acceptance_grid() -> tuple:
    return VALIDATE_GRIDS["acceptance"]


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def _applicable(method: Method, p: ChannelParams, q: QosParams) -> str | None:
    """Reason a preset skips ``method`` at this point, or None."""
    if method is Method.HIGH_SNR and not q.a_cap < p.mu:
        return "A >= mu"
    return None


def _error_text(exc: Exception) -> str:
    if isinstance(exc, (ConvergenceError, IntegrandError)):
        return f"convergence: {exc}"
    return f"domain: {exc}"


def evaluate_row(task: Task, cfg: RunConfig) -> dict:
    """Evaluate one (point, method) pair into an output row; never raises library errors."""
    p, q = task.p, task.q
    row = {
        "kappa": p.kappa,
        "mu": p.mu,
        "m": p.m,
        "avg_snr": p.avg_snr,
        "avg_snr_db": linear_to_db(p.avg_snr),
        "A": q.a_cap,
        "requested_method": str(task.method),
        "method": "",
        "R": None,
        "error_estimate": None,
        "route": "",
        "note": "",
        "paranoid_discrepancy": None,
        "error": "",
        "wall_time_s": 0.0,
    }
    opts = EvalOptions(
        method=task.method, tol=cfg.tol, seed=cfg.seed, mc_count=cfg.mc_count, paranoid=cfg.paranoid
    )
    start = time.perf_counter()
    try:
        res = capacity(p, q, opts)
    except KmsecError as exc:
        row["error"] = _error_text(exc)
        row["_exc"] = type(exc).__name__
    else:
        _fill(row, res)
    row["wall_time_s"] = time.perf_counter() - start
    return row


def _fill(row: dict, res: CapacityResult) -> None:
    d = res.diagnostics
    row["method"] = str(res.method)
    row["R"] = res.bits_per_s_per_hz
    row["error_estimate"] = res.error_estimate
    row["route"] = ">".join(d.get("route", []))
    row["note"] = d.get("fallback_reason", "")
    row["paranoid_discrepancy"] = d.get("paranoid_discrepancy")


def _eval_packed(args):
    return evaluate_row(*args)


def run_tasks(tasks: list[Task], cfg: RunConfig) -> list[dict]:
    """Evaluate in order; with ``cfg.jobs > 1`` rows are computed in worker processes."""
    packed = [(t, cfg) for t in tasks]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_eval_packed, packed))
    return [_eval_packed(a) for a in packed]


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def render(meta: dict, columns, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        body = {"metadata": meta, "columns": list(columns), "rows": [{c: r.get(c) for c in columns} for r in rows]}
        return json.dumps(body, indent=2, default=str) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}: {json.dumps(v, default=str)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _meta(command: str, cfg: RunConfig, **extra) -> dict:
    meta = {
        "artifact": f"kmsec {__version__}",
        "command": command,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "mc_count": cfg.mc_count,
        "paranoid": cfg.paranoid,
    }
    meta.update(extra)
    return meta


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

def _method_list(text: str) -> tuple:
    try:
        return tuple(Method.parse(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _float_list(text: str) -> tuple:
    text = text.strip()
    if ":" in text:
        parts = [float(s) for s in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise argparse.ArgumentTypeError("range must be start:stop:step with step > 0")
        start, stop, step = parts
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(float(start + i * step) for i in range(max(n, 0)))
    return tuple(float(s) for s in text.split(",") if s.strip())


def _add_channel_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("channel")
    g.add_argument("--kappa", type=float, help="dominant-to-scattered power ratio (>= 0)")
    g.add_argument("--mu", type=float, help="number of clusters (> 0)")
    g.add_argument("--m", type=float, help="shadowing shape (> 0)")
    snr = g.add_mutually_exclusive_group()
    snr.add_argument("--snr", type=float, help="average SNR, linear")
    snr.add_argument("--snr-db", type=float, help="average SNR in dB (10 log10)")


def _add_qos_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("delay QoS (A, or theta/T/B with A = theta T B / ln 2)")
    g.add_argument("--A", dest="A", type=float, help="delay exponent A")
    g.add_argument("--theta", type=float, help="QoS exponent theta")
    g.add_argument("--block-t", type=float, help="block duration T in seconds")
    g.add_argument("--bandwidth", type=float, help="bandwidth B in Hz")


def _add_run_flags(p: argparse.ArgumentParser, *, method_help: str, default_method: str) -> None:
    g = p.add_argument_group("run")
    g.add_argument("--method", help=method_help + f" (default {default_method})")
    g.add_argument("--tol", type=float, help="relative tolerance (default 1e-10)")
    g.add_argument("--seed", type=int, help="RNG seed (default 0)")
    g.add_argument("--count", type=int, help="Monte Carlo draws / sample size")
    g.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--config", help="key = value file mirroring these flags")
    g.add_argument("--paranoid", action="store_true", default=None, help="cross-check every value against quadrature")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmsec", description="Effective capacity over kappa-mu shadowed fading."
    )
    parser.add_argument("--version", action="version", version=f"kmsec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="evaluate one point")
    _add_channel_flags(p)
    _add_qos_flags(p)
    _add_run_flags(p, method_help="route: auto, quadrature, egbmgf, series, ...", default_method="auto")

    p = sub.add_parser("sweep", help="tabulate R over one axis, or a figure preset")
    _add_channel_flags(p)
    _add_qos_flags(p)
    _add_run_flags(p, method_help="comma-separated routes", default_method="auto")
    p.add_argument("--preset", choices=sorted(PRESETS), help="figure reproduction preset (ignores channel flags)")
    p.add_argument("--axis", choices=SWEEP_AXES, help="swept parameter (default avg_snr_db)")
    p.add_argument("--values", help="comma list or start:stop:step for the swept axis")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")

    p = sub.add_parser("sample", help="draw SNR samples")
    _add_channel_flags(p)
    _add_run_flags(p, method_help="unused", default_method="-")
    p.add_argument("--stream", type=int, help="independent stream index (default 0)")

    p = sub.add_parser("validate", help="run the cross-method agreement suite")
    _add_run_flags(p, method_help="unused", default_method="-")
    p.add_argument("--grid", choices=sorted(VALIDATE_GRIDS), help="grid preset (default 'default')")
    p.add_argument(
        "--agree-tol", type=float, help="relative agreement threshold (default 1e-6; --tol also sets it)"
    )
    return parser


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._subparsers._group_actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)  # pragma: no cover


def apply_config(args: argparse.Namespace, sub: argparse.ArgumentParser, argv: list[str]) -> None:
    """Fill unset options from ``args.config``; command-line flags take precedence."""
    if not args.config:
        return
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=", ":"))
    cp.optionxform = str
    try:
        with open(args.config, encoding="utf-8") as fh:
            cp.read_string("[kmsec]\n" + fh.read())
    except configparser.Error as exc:
        raise UsageError(f"bad config file: {exc}") from None
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    given = {a.dest for a in sub._actions if any(opt in argv for opt in a.option_strings)}
    for key, raw in cp["kmsec"].items():
        dest = key.strip().lstrip("-").replace("-", "_")
        if dest == "a":
            dest = "A"
        if dest not in actions:
            raise UsageError(f"unknown config key {key!r}")
        if dest in given or any(o in given for o in _EXCLUSIVE.get(dest, ())):
            continue
        action = actions[dest]
        if isinstance(action, argparse._StoreTrueAction):
            value = raw.strip().lower() in ("1", "true", "yes", "on")
        else:
            try:
                value = action.type(raw.strip()) if action.type else raw.strip()
            except (TypeError, ValueError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
            if action.choices and value not in action.choices:
                raise UsageError(f"config key {key!r}: {value!r} not in {sorted(action.choices)}")
        setattr(args, dest, value)


def _run_config(args: argparse.Namespace, default_count: int) -> RunConfig:
    return RunConfig(
        tol=args.tol if args.tol is not None else 1e-10,
        seed=args.seed if args.seed is not None else 0,
        output_format=args.format or "csv",
        output_path=args.out,
        paranoid=bool(args.paranoid),
        mc_count=args.count if args.count is not None else default_count,
        jobs=getattr(args, "jobs", None) or 1,
    )


def _channel(args: argparse.Namespace, *, need_snr: bool = True) -> ChannelParams:
    missing = [f"--{n}" for n in ("kappa", "mu", "m") if getattr(args, n) is None]
    if args.snr is not None and args.snr_db is not None:
        raise UsageError("give only one of --snr and --snr-db")
    if need_snr and args.snr is None and args.snr_db is None:
        missing.append("--snr/--snr-db")
    if missing:
        raise UsageError("missing " + ", ".join(missing))
    if args.snr is not None:
        snr = args.snr
    elif args.snr_db is not None:
        snr = db_to_linear(args.snr_db)
    else:
        snr = 1.0
    return ChannelParams(args.kappa, args.mu, args.m, snr)


def _qos(args: argparse.Namespace) -> QosParams:
    triple = (args.theta, args.block_t, args.bandwidth)
    if args.A is not None:
        if any(v is not None for v in triple):
            raise UsageError("give either --A or --theta/--block-t/--bandwidth")
        return QosParams(args.A)
    if all(v is not None for v in triple):
        return QosParams.from_theta(*triple)
    raise UsageError("missing --A (or all of --theta, --block-t, --bandwidth)")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_capacity(args: argparse.Namespace) -> int:
    cfg = _run_config(args, 1_000_000)
    p, q = _channel(args), _qos(args)
    method = Method.parse(args.method) if args.method else Method.AUTO
    row = evaluate_row(Task(p, q, method), cfg)
    exc = row.pop("_exc", None)
    if exc is not None:
        print(f"kmsec capacity: {row['error']}", file=sys.stderr)
        return EXIT_CONVERGENCE if row["error"].startswith("convergence") else EXIT_DOMAIN
    emit(render(_meta("capacity", cfg), ROW_COLUMNS, [row], cfg.output_format), cfg.output_path)
    return EXIT_OK


def _sweep_specs(args: argparse.Namespace) -> tuple[list[SweepSpec], dict]:
    if args.preset:
        return PRESETS[args.preset](), {"preset": args.preset}
    axis = args.axis or "avg_snr_db"
    if not args.values:
        raise UsageError("sweep needs --values (or --preset)")
    values = _float_list(args.values)
    methods = _method_list(args.method) if args.method else (Method.AUTO,)
    p = _channel(args, need_snr=axis != "avg_snr_db")
    if axis == "a_cap":
        q = QosParams(values[0])
    else:
        q = _qos(args)
    return [SweepSpec(axis, values, p, q, methods)], {"axis": axis}


def sweep_tasks(specs: list[SweepSpec], *, skip_inapplicable: bool) -> list[Task]:
    tasks = []
    for spec in specs:
        for v in spec.values:
            p, q = spec.point(v)
            for method in spec.methods:
                if skip_inapplicable and _applicable(method, p, q):
                    continue
                tasks.append(Task(p, q, method))
    return tasks


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _run_config(args, 1_000_000)
    specs, extra = _sweep_specs(args)
    tasks = sweep_tasks(specs, skip_inapplicable=bool(args.preset))
    rows = run_tasks(tasks, cfg)
    failed = sum(1 for r in rows if r.pop("_exc", None) is not None)
    meta = _meta("sweep", cfg, **extra, curves=len(specs), rows=len(rows), failed_rows=failed)
    emit(render(meta, ROW_COLUMNS, rows, cfg.output_format), cfg.output_path)
    if failed:
        print(f"kmsec sweep: {failed} of {len(rows)} rows failed", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    cfg = _run_config(args, 1000)
    p = _channel(args)
    stream = args.stream or 0
    batch = sample(p, cfg.mc_count, cfg.seed, stream)
    meta = _meta(
        "sample",
        cfg,
        kappa=p.kappa,
        mu=p.mu,
        m=p.m,
        avg_snr=p.avg_snr,
        count=cfg.mc_count,
        stream=stream,
        rng=batch.rng,
    )
    meta.pop("mc_count")
    meta.pop("paranoid")
    meta.pop("tol")
    if cfg.output_format == "json":
        text = json.dumps({"metadata": meta, "values": batch.values.tolist()}) + "\n"
    else:
        head = "".join(f"# {k}: {json.dumps(v)}\n" for k, v in meta.items())
        text = head + "snr\n" + "\n".join(repr(float(v)) for v in batch.values) + "\n"
    emit(text, cfg.output_path)
    return EXIT_OK


def validate_rows(grid, agree_tol: float, mc_count: int, seed: int, eval_tol: float = 1e-10) -> list[dict]:
    """Compare the closed-form, series and Monte Carlo routes with quadrature at every grid point."""
    rows = []
    for i, (k, mu, m, a_cap, db) in enumerate(grid):
        p = ChannelParams(k, mu, m, db_to_linear(db))
        q = QosParams(a_cap)
        base = {"point": i, "kappa": k, "mu": mu, "m": m, "avg_snr_db": db, "A": a_cap}
        try:
            ref = capacity_quadrature(p, q, eval_tol).bits_per_s_per_hz
        except KmsecError as exc:
            ref, ref_error = math.nan, _error_text(exc)
        else:
            ref_error = ""
        for check in VALIDATE_CHECKS:
            row = dict(base, check=check, reference=ref)
            method = {"exact": Method.AUTO, "series": Method.SERIES, "monte_carlo": Method.MONTE_CARLO}[check]
            try:
                res = capacity(p, q, EvalOptions(method=method, tol=eval_tol, seed=seed, mc_count=mc_count))
            except KmsecError as exc:
                row.update(method="", value=None, discrepancy=math.inf, threshold=None, passed=False)
                row["method"] = f"error ({_error_text(exc)})"
                rows.append(row)
                continue
            row["method"] = str(res.method)
            row["value"] = res.bits_per_s_per_hz
            if check == "monte_carlo":
                row["discrepancy"] = abs(res.bits_per_s_per_hz - ref) / res.error_estimate
                row["threshold"] = 3.0
            else:
                row["discrepancy"] = abs(res.bits_per_s_per_hz - ref) / abs(ref)
                row["threshold"] = agree_tol
            row["passed"] = not ref_error and row["discrepancy"] <= row["threshold"]
            rows.append(row)
    return rows


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = _run_config(args, 100_000)
    grid_name = args.grid or "default"
    agree = args.agree_tol if args.agree_tol is not None else (args.tol if args.tol is not None else 1e-6)
    if not agree > 0:
        raise UsageError("agreement tolerance must be positive")
    rows = validate_rows(VALIDATE_GRIDS[grid_name], agree, cfg.mc_count, cfg.seed)
    failed = sum(1 for r in rows if not r["passed"])
    meta = _meta("validate", cfg, grid=grid_name, agree_tol=agree, checks=len(rows), failed=failed)
    meta.pop("tol")
    meta.pop("paranoid")
    emit(render(meta, VALIDATE_COLUMNS, rows, cfg.output_format), cfg.output_path)
    print(f"kmsec validate: {len(rows) - failed}/{len(rows)} checks passed", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


COMMANDS = {"capacity": cmd_capacity, "sweep": cmd_sweep, "sample": cmd_sample, "validate": cmd_validate}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        apply_config(args, _subparser(parser, args.command), argv)
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"kmsec {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConvergenceError, IntegrandError) as exc:
        print(f"kmsec {args.command}: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DomainError as exc:
        print(f"kmsec {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
