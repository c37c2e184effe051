"""Command-line front end.

Subcommands consume a JSON model config and emit plain text or CSV.
Exit codes: 0 success, 2 parse failure (config or arguments), 3 input
validation failure, 4 solver failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import markov
from .bounds import (
    FuzzySystemParams,
    Metric,
    PARAM_BETA,
    PARAM_LAMBDA,
    PARAM_MU,
    PARAM_THETA,
    membership_curve,
)
from .decision import (
    AlphaCutTable,
    DecisionQuery,
    build_table,
    calibrate_coverage,
    invert_query,
)
from .errors import ConfigError, SolverError, ValidationError
from .fuzzy import FuzzyNumber, Interval
from .simulate import SimConfig, simulate_availability, simulate_mttf

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SOLVER = 4
EXIT_IO = 5

_COLUMN_LETTER = {
    PARAM_LAMBDA: "x",
    PARAM_THETA: "v",
    PARAM_MU: "y",
    PARAM_BETA: "w",
}

_DEFAULT_ALPHAS = tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class ModelConfig:
    fuzzy_params: FuzzySystemParams
    metric: Metric
    alphas: tuple[float, ...]
    solver_seed: int
    sim: SimConfig
    reference_bounds: tuple[tuple[float, float, float], ...] | None


def _as_number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field '{field}' must be a number, got {value!r}")
    return float(value)


def _as_int(value, field: str, default: int) -> int:
    if value is None:
        return default
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{field}' must be an integer, got {value!r}")
    return value


def _fuzzy_field(value, field: str) -> FuzzyNumber:
    try:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return FuzzyNumber.crisp(float(value))
        if isinstance(value, list):
            nodes = [_as_number(v, field) for v in value]
            if len(nodes) == 3:
                return FuzzyNumber.triangular(*nodes)
            if len(nodes) == 4:
                return FuzzyNumber.trapezoidal(*nodes)
            raise ConfigError(
                f"field '{field}' must have 3 (triangular) or 4 (trapezoidal) "
                f"numbers, got {len(nodes)}"
            )
        if isinstance(value, dict) and "breakpoints" in value:
            pts = [
                (_as_number(p[0], field), _as_number(p[1], field))
                for p in value["breakpoints"]
            ]
            return FuzzyNumber.from_breakpoints(pts)
    except ValidationError as exc:
        raise ValidationError(f"field '{field}': {exc}") from exc
    raise ConfigError(
        f"field '{field}' must be a number, a 3/4-number list, or an object "
        f"with 'breakpoints'"
    )


def _parse_metric(raw: dict, override_kind: str | None, override_t: float | None):
    kind = override_kind if override_kind is not None else raw.get("metric", "mtbf")
    if not isinstance(kind, str) or kind not in Metric.KINDS:
        raise ConfigError(
            f"field 'metric' must be one of {Metric.KINDS}, got {kind!r}"
        )
    if kind != "reliability":
        return Metric(kind)
    t = override_t if override_t is not None else raw.get("t")
    if t is None:
        raise ConfigError("reliability metric requires a mission time 't'")
    return Metric(kind, _as_number(t, "t"))


def load_model_config(
    path: str,
    *,
    override_metric: str | None = None,
    override_t: float | None = None,
) -> ModelConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                f"{exc.msg}"
            ) from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")

    for key in ("lambda", "theta", "mu", "beta", "c"):
        if key not in raw:
            raise ConfigError(f"{path}: missing required field '{key}'")

    solver = raw.get("solver", {})
    if not isinstance(solver, dict):
        raise ConfigError("field 'solver' must be an object")
    fp = FuzzySystemParams(
        failure_rate=_fuzzy_field(raw["lambda"], "lambda"),
        standby_failure_rate=_fuzzy_field(raw["theta"], "theta"),
        repair_rate=_fuzzy_field(raw["mu"], "mu"),
        reboot_rate=_fuzzy_field(raw["beta"], "beta"),
        coverage=_as_number(raw["c"], "c"),
        enforce_standby_slower=bool(solver.get("enforce_standby_slower", False)),
    )
    metric = _parse_metric(raw, override_metric, override_t)

    alphas_raw = raw.get("alphas")
    if alphas_raw is None:
        alphas = _DEFAULT_ALPHAS
    else:
        if not isinstance(alphas_raw, list):
            raise ConfigError("field 'alphas' must be a list of numbers")
        alphas = tuple(_as_number(a, "alphas") for a in alphas_raw)

    sim_raw = raw.get("simulation", {})
    if not isinstance(sim_raw, dict):
        raise ConfigError("field 'simulation' must be an object")
    sim = SimConfig(
        params=fp.modal_params(),
        replications=_as_int(sim_raw.get("replications"), "simulation.replications", 100_000),
        horizon=_as_number(sim_raw.get("horizon", 100_000.0), "simulation.horizon"),
        seed=_as_int(sim_raw.get("seed"), "simulation.seed", 0),
        warmup_fraction=_as_number(
            sim_raw.get("warmup_fraction", 0.01), "simulation.warmup_fraction"
        ),
        batches=_as_int(sim_raw.get("batches"), "simulation.batches", 20),
    )

    reference = raw.get("reference_bounds")
    ref_rows = None
    if reference is not None:
        if not isinstance(reference, list):
            raise ConfigError("field 'reference_bounds' must be a list of rows")
        ref_rows = tuple(
            (
                _as_number(row[0], "reference_bounds"),
                _as_number(row[1], "reference_bounds"),
                _as_number(row[2], "reference_bounds"),
            )
            for row in reference
        )

    return ModelConfig(
        fuzzy_params=fp,
        metric=metric,
        alphas=alphas,
        solver_seed=_as_int(solver.get("seed"), "solver.seed", 0),
        sim=sim,
        reference_bounds=ref_rows,
    )


def _fmt(x: float, full: bool) -> str:
    return f"{x:.17g}" if full else f"{x:.4f}"


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _levels(args, cfg: ModelConfig) -> tuple[float, ...]:
    if getattr(args, "levels", None) is None:
        return cfg.alphas
    n = args.levels
    if n < 2:
        raise ConfigError(f"--levels must be at least 2, got {n}")
    return tuple(i / (n - 1) for i in range(n))


def _table_csv(table: AlphaCutTable, full: bool) -> list[str]:
    header = ["alpha"]
    for name in table.parameters:
        letter = _COLUMN_LETTER[name]
        header += [f"{letter}_L", f"{letter}_U"]
    header += ["T_L", "T_U"]
    lines = [",".join(header)]
    for row in table.rows:
        cells = [_fmt(row.alpha, full)]
        for name in table.parameters:
            iv = row.cuts[name]
            cells += [_fmt(iv.lo, full), _fmt(iv.hi, full)]
        cells += [_fmt(row.bounds.lo, full), _fmt(row.bounds.hi, full)]
        lines.append(",".join(cells))
    return lines


def cmd_metrics(args) -> int:
    cfg = load_model_config(args.config)
    params = cfg.fuzzy_params.modal_params()
    full = args.full_precision
    value = markov.mttf(params)
    lines = [f"MTTF          {_fmt(value, full)}"]
    if params.repair_rate > 0:
        avail = markov.steady_availability(params)
        lines.append(f"availability  {_fmt(avail, full)}")
    else:
        lines.append("availability  n/a (requires repair rate > 0)")
    lines.append("reliability:")
    for factor in (0.0, 0.5, 1.0, 2.0, 5.0):
        t = factor * value
        lines.append(
            f"  t={_fmt(t, full)}  R={_fmt(markov.reliability_at(params, t), full)}"
        )
    print("\n".join(lines))
    return EXIT_OK


def cmd_alphacut(args) -> int:
    cfg = load_model_config(args.config, override_metric=args.metric, override_t=args.t)
    table = build_table(
        cfg.fuzzy_params, cfg.metric, _levels(args, cfg), seed=cfg.solver_seed
    )
    _write_lines(args.out, _table_csv(table, args.full_precision))
    if args.out is not None:
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_curve(args) -> int:
    cfg = load_model_config(args.config, override_metric=args.metric, override_t=args.t)
    curve = membership_curve(
        cfg.fuzzy_params, cfg.metric, _levels(args, cfg), seed=cfg.solver_seed
    )
    full = args.full_precision
    rows = ["alpha,lower,upper"]
    for alpha, iv in curve.rows:
        rows.append(f"{_fmt(alpha, full)},{_fmt(iv.lo, full)},{_fmt(iv.hi, full)}")
    _write_lines(args.out, rows)

    support = curve.support
    zs = np.linspace(support.lo, support.hi, 201)
    member = ["z,membership"]
    for z in zs:
        member.append(f"{_fmt(float(z), full)},{_fmt(curve.membership_at(float(z)), full)}")
    member_path = None
    if args.out is not None:
        stem, dot, ext = args.out.rpartition(".")
        member_path = f"{stem}_membership.{ext}" if dot else f"{args.out}_membership"
    _write_lines(member_path, member)
    if args.out is not None:
        print(f"wrote {args.out}")
        print(f"wrote {member_path}")
    return EXIT_OK


def cmd_invert(args) -> int:
    cfg = load_model_config(args.config, override_metric=args.metric, override_t=args.t)
    curve = membership_curve(
        cfg.fuzzy_params, cfg.metric, _levels(args, cfg), seed=cfg.solver_seed
    )
    query = DecisionQuery(metric=cfg.metric, target=Interval(args.lower, args.upper))
    alpha = invert_query(curve, query)
    cut = curve.interval_at(alpha)
    print(f"alpha = {alpha:.2f}")
    print(f"cut   = [{cut.lo:.4f}, {cut.hi:.4f}]")
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = load_model_config(args.config, override_metric=args.metric, override_t=args.t)
    sim = cfg.sim
    if args.reps is not None:
        sim = dataclasses.replace(sim, replications=args.reps)
    if args.seed is not None:
        sim = dataclasses.replace(sim, seed=args.seed)
    if cfg.metric.kind == "mtbf":
        est = simulate_mttf(sim)
        row = ("mttf", est)
    elif cfg.metric.kind == "availability":
        est = simulate_availability(sim)
        row = ("availability", est)
    else:
        raise ConfigError("simulate supports the metrics 'mtbf' and 'availability'")
    name, est = row
    lines = [
        "quantity,mean,std_error,replications",
        f"{name},{est.mean:.6f},{est.std_error:.6f},{est.replications}",
    ]
    _write_lines(args.out, lines)
    if args.out is not None:
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cfg = load_model_config(args.config, override_metric=args.metric, override_t=args.t)
    anchor = Interval(args.lower, args.upper)
    result = calibrate_coverage(
        cfg.fuzzy_params,
        cfg.metric,
        args.anchor_alpha,
        anchor,
        seed=cfg.solver_seed,
    )
    print(f"coverage = {result.coverage:.6f}")
    print(f"anchor residuals: lower {result.lower_residual:+.3e}, "
          f"upper {result.upper_residual:+.3e}")
    if cfg.reference_bounds:
        calibrated = cfg.fuzzy_params.with_coverage(result.coverage)
        alphas = tuple(row[0] for row in cfg.reference_bounds)
        curve = membership_curve(calibrated, cfg.metric, alphas, seed=cfg.solver_seed)
        print("reference residuals:")
        print("alpha,T_L_residual,T_U_residual")
        for (a, lo, hi), iv in zip(cfg.reference_bounds, curve.intervals):
            print(f"{a:.2f},{iv.lo - lo:+.6f},{iv.hi - hi:+.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzrel",
        description=(
            "Fuzzy reliability characteristics of a repairable warm-standby "
            "system with imperfect coverage"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_levels=True):
        p.add_argument("config", help="JSON model config")
        p.add_argument("--metric", choices=list(Metric.KINDS), default=None,
                       help="override the config metric")
        p.add_argument("--t", type=float, default=None,
                       help="mission time for the reliability metric")
        p.add_argument("--full-precision", action="store_true",
                       help="emit 17 significant digits instead of 4 decimals")
        if with_levels:
            p.add_argument("--levels", type=int, default=None,
                           help="number of evenly spaced alpha levels")

    p = sub.add_parser("metrics", help="crisp characteristics at the modal rates")
    add_common(p, with_levels=False)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("alphacut", help="alpha-cut table as CSV")
    add_common(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_alphacut)

    p = sub.add_parser("curve", help="membership curve and sampled membership CSV")
    add_common(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("invert", help="alpha level that fits a target interval")
    add_common(p)
    p.add_argument("--lower", type=float, required=True, help="target lower bound")
    p.add_argument("--upper", type=float, required=True, help="target upper bound")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the metric")
    add_common(p, with_levels=False)
    p.add_argument("--reps", type=int, default=None, help="override replications")
    p.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("calibrate", help="fit coverage to anchor bounds")
    add_common(p)
    p.add_argument("--anchor-alpha", type=float, required=True,
                   help="alpha level of the anchor bounds")
    p.add_argument("--lower", type=float, required=True, help="anchor lower bound")
    p.add_argument("--upper", type=float, required=True, help="anchor upper bound")
    p.set_defaults(func=cmd_calibrate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
