"""Command-line front end.

Subcommands:
    run     one grid point; prints the CSV header and its single record
    sweep   full (or restricted) grid to a CSV file
    oracle  exact enumeration tables for the swap and purification round
    trace   one trial with the event trace on stdout

Configuration can come from a flat key=value file (--config); command-line
flags override the file, the file overrides the built-in defaults.  Exit
codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import fields, replace
from typing import Optional, Sequence

from .metrics import (CSV_HEADER, estimate_fidelity, estimate_throughput,
                      records_to_csv, run_sweep, sweep_point, trial_rng)
from .oracle import ss_dp_werner, swap_oracle, werner
from .params import SimParams
from .strategies import STRATEGIES, normalize_strategy, run_trial

_INT_FIELDS = {"hops", "n_trials", "seed"}
_BOOL_FIELDS = {"qec_storage"}
_FIELD_NAMES = {f.name for f in fields(SimParams)}


class ConfigError(Exception):
    pass


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in _INT_FIELDS:
            return int(raw)
        if key in _BOOL_FIELDS:
            if raw.lower() in ("true", "1", "yes", "on"):
                return True
            if raw.lower() in ("false", "0", "no", "off"):
                return False
            raise ValueError(raw)
        if raw.lower() in ("inf", "infinity"):
            return math.inf
        return float(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r}: cannot parse value {raw!r}") from None


def read_config_file(path: str) -> dict:
    """Flat key = value lines; '#' starts a comment."""
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
                key, raw = (part.strip() for part in line.split("=", 1))
                if key not in _FIELD_NAMES:
                    raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
                values[key] = _parse_value(key, raw)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return values


def build_params(args: argparse.Namespace) -> SimParams:
    """Defaults, overridden by the config file, overridden by flags."""
    values: dict = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    flag_map = {
        "hops": "hops", "lambda_gate": "lambda_gate", "p_meas": "p_meas",
        "p_depo": "p_depo", "tau_memory": "tau_memory", "trials": "n_trials",
        "seed": "seed", "t_sim": "t_sim", "total_distance": "total_distance",
    }
    for flag, field_name in flag_map.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[field_name] = v
    if getattr(args, "no_noise", False):
        values.update(p_depo=0.0, lambda_gate=0.0, p_meas=0.0, tau_memory=math.inf)
    try:
        return SimParams(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _selected_strategies(name: str) -> list[str]:
    if name.strip().lower() == "all":
        return list(STRATEGIES)
    return [normalize_strategy(name)]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="key=value parameter file")
    parser.add_argument("--strategy", default="all",
                        help="strategy name or 'all' (default: all)")
    parser.add_argument("--hops", type=int)
    parser.add_argument("--lambda-gate", dest="lambda_gate", type=float)
    parser.add_argument("--p-meas", dest="p_meas", type=float)
    parser.add_argument("--p-depo", dest="p_depo", type=float)
    parser.add_argument("--tau-memory", dest="tau_memory", type=float)
    parser.add_argument("--total-distance", dest="total_distance", type=float)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--t-sim", dest="t_sim", type=float)
    parser.add_argument("--no-noise", action="store_true",
                        help="switch every error channel off")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repeatersim",
        description="Monte Carlo simulator of repeater-chain entanglement "
                    "distribution strategies")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="estimate one grid point and print its record")
    _add_common(p_run)

    p_sweep = sub.add_parser("sweep", help="run the full parameter grid to a CSV file")
    _add_common(p_sweep)
    p_sweep.add_argument("--out", metavar="PATH", default="sweep.csv")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="worker processes (default 1)")
    p_sweep.add_argument("--quiet", action="store_true")

    p_oracle = sub.add_parser("oracle", help="print exact enumeration tables")
    p_oracle.add_argument("--fidelity", type=float, nargs="+",
                          default=[0.7, 0.86, 0.9508])

    p_trace = sub.add_parser("trace", help="run one trial and print its event trace")
    _add_common(p_trace)
    return parser


def cmd_run(args) -> int:
    params = build_params(args)
    strategies = _selected_strategies(args.strategy)
    print(CSV_HEADER)
    for s in strategies:
        print(sweep_point(s, params).csv_row())
    return 0


def cmd_sweep(args) -> int:
    params = build_params(args)
    strategies = _selected_strategies(args.strategy)
    def progress(rec):
        if not args.quiet:
            print(f"done {rec.strategy} h={rec.hops} lambda={rec.lambda_gate} "
                  f"p_meas={rec.p_meas}: F={rec.fidelity.point:.4f}", file=sys.stderr)
    records = run_sweep(params, strategies=strategies, jobs=args.jobs,
                        progress=progress)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(records_to_csv(records))
    if not args.quiet:
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return 0


def _dist_row(dist) -> str:
    return " ".join(f"{v:.6f}" for v in dist)


def cmd_oracle(args) -> int:
    print("# swap: input_F output class distribution (I X Z Y)")
    for f in args.fidelity:
        out = swap_oracle(werner(f), werner(f))
        print(f"swap {f:.6g} {_dist_row(out)}")
    print("# ss_dp: input_F success_prob output class distribution (I X Z Y)")
    for f in args.fidelity:
        p, out = ss_dp_werner(f)
        print(f"ss_dp {f:.6g} {p:.6f} {_dist_row(out)}")
    return 0


def cmd_trace(args) -> int:
    params = build_params(args)
    strategy = _selected_strategies(args.strategy)[0]
    rng = trial_rng(params.seed, "trace", strategy, params.hops,
                    params.lambda_gate, params.p_meas, 0)
    lines: list[str] = []
    result = run_trial(strategy, params, rng, trace=lines.append)
    for line in lines:
        print(line)
    print(f"# delivered_at={result.delivered_at:.9f} residual={result.residual} "
          f"kind={result.kind} pairs={result.pairs_consumed}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "oracle":
            return cmd_oracle(args)
        if args.command == "trace":
            return cmd_trace(args)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
