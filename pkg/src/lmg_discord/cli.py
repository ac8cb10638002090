"""Command-line front end.

Exit codes: 0 success, 2 invalid configuration, 3 invariant violation
during a run.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import runs
from .correlations import discord_xstate
from .dynamics import evolve
from .errors import InvalidParameterError, InvalidStateError, InvariantViolation
from .model import ModelParams, initial_xstate

log = logging.getLogger("lmg_discord")

EXIT_OK, EXIT_CONFIG, EXIT_INVARIANT = 0, 2, 3


class ConfigError(Exception):
    pass


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; keys are long option names."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-")] = value
    return values


def _add_model_args(p, need_lambda=True):
    if need_lambda:
        p.add_argument("--lambda", dest="lam", type=float, help="bath coupling")
    p.add_argument("--lambda-prime", dest="lam_prime", type=float, help="qubit-bath coupling")
    p.add_argument("--spins", type=int, help="number of bath spins N (even)")
    p.add_argument("--kx", type=float, default=1.0)
    p.add_argument("--ky", type=float, default=-1.0)
    p.add_argument("--kz", type=float, default=1.0)


def _add_time_args(p):
    p.add_argument("--t-max", type=float, default=runs.DEFAULT_T_MAX)
    p.add_argument("--steps", type=int, default=runs.DEFAULT_STEPS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmg-discord",
        description="Quantum discord and entanglement of two qubits in an isotropic LMG bath.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="time series at fixed couplings")
    _add_model_args(sim)
    _add_time_args(sim)
    sim.add_argument("--out", type=Path)
    sim.add_argument("--plot", action="store_true", help="also write a gnuplot script")
    sim.add_argument("--config", type=Path, help="key=value file; flags take precedence")

    sw = sub.add_parser("sweep", help="grid over the bath coupling and time")
    sw.add_argument("--lambda-min", type=float)
    sw.add_argument("--lambda-max", type=float)
    sw.add_argument("--lambda-steps", type=int)
    sw.add_argument("--lambda-prime-equal-lambda", action="store_true")
    _add_model_args(sw, need_lambda=False)
    _add_time_args(sw)
    sw.add_argument("--out", type=Path)
    sw.add_argument("--plot", action="store_true")
    sw.add_argument("--config", type=Path)

    fig = sub.add_parser("figure", help="reproduce a figure panel")
    fig.add_argument("name", choices=sorted(runs.FIGURE_PRESETS) + ["all"])
    fig.add_argument("--out-dir", type=Path, required=True)
    _add_time_args(fig)
    fig.add_argument("--no-plot", action="store_true")

    orc = sub.add_parser("oracle", help="compare against dense evolution (small N)")
    _add_model_args(orc)
    orc.add_argument("--times", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0])
    orc.add_argument("--discord", action="store_true",
                     help="also compare closed-form discord with a measurement sweep")
    orc.add_argument("--config", type=Path)
    return parser


def _apply_config(parser, argv):
    # config values become subparser defaults, so explicit flags still win
    args = parser.parse_args(argv)
    path = getattr(args, "config", None)
    if path is None:
        return args
    values = read_config(path)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    by_flag = {}
    for action in sub._actions:
        for opt in action.option_strings:
            if opt.startswith("--"):
                by_flag[opt[2:]] = action
    defaults = {}
    for key, raw in values.items():
        action = by_flag.get(key)
        if action is None or key == "config":
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(action, (argparse._StoreTrueAction,)):
            defaults[action.dest] = raw.lower() in ("1", "true", "yes", "on")
        else:
            try:
                defaults[action.dest] = (action.type or str)(raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


_FLAG_NAMES = {"lam": "--lambda", "lam_prime": "--lambda-prime"}


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join(_FLAG_NAMES.get(n, "--" + n.replace("_", "-")) for n in missing)
        raise ConfigError(f"missing required option(s): {flags}")


def _params(args, lam=None, lam_prime=None):
    return ModelParams(
        lam if lam is not None else args.lam,
        lam_prime if lam_prime is not None else args.lam_prime,
        args.spins, args.kx, args.ky, args.kz)


def _emit(config):
    rows = runs.run(config)
    if config.out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(runs.CSV_HEADER)
        for row in rows:
            writer.writerow([repr(float(v)) for v in row.values()])
    else:
        for path in runs.emit_outputs(rows, config):
            log.info("wrote %s", path)


def _cmd_simulate(args):
    _require(args, "lam", "lam_prime", "spins")
    config = runs.RunConfig("timeseries", _params(args), args.t_max, args.steps,
                            out=args.out, emit_plot=args.plot)
    return config


def _cmd_sweep(args):
    _require(args, "lambda_min", "lambda_max", "lambda_steps", "spins")
    equal = args.lambda_prime_equal_lambda
    if equal and args.lam_prime is not None:
        raise ConfigError("--lambda-prime and --lambda-prime-equal-lambda are exclusive")
    if not equal:
        _require(args, "lam_prime")
    lam0 = args.lambda_min
    params = _params(args, lam=lam0 if lam0 and lam0 > 0 else 1.0,
                     lam_prime=lam0 if equal else args.lam_prime)
    return runs.RunConfig("sweep", params, args.t_max, args.steps,
                          lambda_min=args.lambda_min, lambda_max=args.lambda_max,
                          lambda_steps=args.lambda_steps,
                          lambda_prime_policy="equal" if equal else "fixed",
                          out=args.out, emit_plot=args.plot)


def _cmd_figure(args):
    names = sorted(runs.FIGURE_PRESETS) if args.name == "all" else [args.name]
    return [runs.figure_config(n, args.out_dir, args.t_max, args.steps,
                               emit_plot=not args.no_plot) for n in names]


def _cmd_oracle(args):
    from .oracle import dense_evolve, discord_bruteforce

    _require(args, "lam", "lam_prime", "spins")
    params = _params(args)
    times = np.asarray(args.times, dtype=float)
    block = evolve(params, times)
    dense = dense_evolve(params, initial_xstate(params.kx, params.ky, params.kz), times)
    print("t,max_abs_diff" + (",closed_discord,bruteforce_discord" if args.discord else ""))
    for t, b, d in zip(times, block, dense):
        line = f"{float(t)!r},{np.max(np.abs(b.matrix() - d.matrix())):.3e}"
        if args.discord:
            line += f",{discord_xstate(b)[0]!r},{discord_bruteforce(b)!r}"
        print(line)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
    except ConfigError as exc:
        print(f"lmg-discord: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "oracle":
            _cmd_oracle(args)
            return EXIT_OK
        elif args.command == "simulate":
            configs = [_cmd_simulate(args)]
        elif args.command == "sweep":
            configs = [_cmd_sweep(args)]
        else:
            configs = _cmd_figure(args)
    except (ConfigError, InvalidParameterError, InvalidStateError) as exc:
        print(f"lmg-discord: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        for config in configs:
            _emit(config)
    except (InvariantViolation, InvalidStateError) as exc:
        print(f"lmg-discord: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
