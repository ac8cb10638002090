"""Time series, coupling sweeps and figure presets, with CSV / gnuplot output."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .correlations import CorrelationRecord, evaluate
from .dynamics import evolve, make_context
from .errors import InvalidParameterError, InvariantViolation
from .model import ModelParams, XState

__all__ = [
    "CSV_HEADER",
    "RunConfig",
    "OutputRow",
    "FIGURE_PRESETS",
    "figure_config",
    "time_grid",
    "run_timeseries",
    "run_sweep",
    "run",
    "emit_outputs",
    "plot_script",
]

CSV_HEADER = ("t", "lambda", "lambda_prime", "discord", "classical", "mutual_info",
              "concurrence", "eof", "purity", "a", "b", "c", "y", "re_z", "im_z")

DEFAULT_T_MAX = 4.0
DEFAULT_STEPS = 801

PURE_BELL = (1.0, -1.0, 1.0)
MIXED_BELL = (1.0, -0.2, 0.2)


@dataclass(frozen=True)
class RunConfig:
    """One batch job.

    ``mode`` is ``"timeseries"`` or ``"sweep"``. In sweep mode the bath
    coupling runs over ``linspace(lambda_min, lambda_max, lambda_steps)``
    and ``lambda_prime_policy`` is ``"fixed"`` (use ``params.lam_prime``)
    or ``"equal"`` (``lambda' = lambda``).
    """

    mode: str
    params: ModelParams
    t_max: float = DEFAULT_T_MAX
    steps: int = DEFAULT_STEPS
    lambda_min: float | None = None
    lambda_max: float | None = None
    lambda_steps: int | None = None
    lambda_prime_policy: str = "fixed"
    out: Path | None = None
    emit_plot: bool = False

    def __post_init__(self):
        if self.mode not in ("timeseries", "sweep"):
            raise InvalidParameterError(f"unknown mode {self.mode!r}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise InvalidParameterError(f"t_max must be > 0, got {self.t_max}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise InvalidParameterError(f"steps must be an integer >= 2, got {self.steps}")
        if self.lambda_prime_policy not in ("fixed", "equal"):
            raise InvalidParameterError(
                f"lambda_prime_policy must be 'fixed' or 'equal', got {self.lambda_prime_policy!r}")
        if self.mode == "sweep":
            lo, hi, n = self.lambda_min, self.lambda_max, self.lambda_steps
            if lo is None or hi is None or n is None:
                raise InvalidParameterError("sweep needs lambda_min, lambda_max and lambda_steps")
            if not (0 < lo <= hi and math.isfinite(hi)):
                raise InvalidParameterError(
                    f"lambda range must satisfy 0 < min <= max, got [{lo}, {hi}]")
            if int(n) != n or n < 1 or (n == 1 and lo != hi):
                raise InvalidParameterError(f"invalid lambda_steps {n}")

    def lambdas(self) -> np.ndarray:
        return np.linspace(self.lambda_min, self.lambda_max, int(self.lambda_steps))


@dataclass(frozen=True)
class OutputRow:
    t: float
    lam: float
    lam_prime: float
    discord: float
    classical: float
    mutual_info: float
    concurrence: float
    eof: float
    purity: float
    a: float
    b: float
    c: float
    y: float
    re_z: float
    im_z: float

    @classmethod
    def from_state(cls, params: ModelParams, state: XState, rec: CorrelationRecord):
        return cls(rec.time, params.lam, params.lam_prime, rec.discord, rec.classical,
                   rec.mutual_info, rec.concurrence, rec.eof, rec.purity,
                   state.a, state.b, state.c, state.y, state.z.real, state.z.imag)

    def values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))


def _check_row(row: OutputRow):
    vals = row.values()
    if not all(math.isfinite(v) for v in vals):
        raise InvariantViolation(f"non-finite value in row at t={row.t}")
    if abs(row.discord + row.classical - row.mutual_info) > 1e-9:
        raise InvariantViolation(f"discord + classical != mutual information at t={row.t}")
    if row.discord < -1e-9 or row.classical < -1e-9:
        raise InvariantViolation(f"negative correlation at t={row.t}")
    if not 0.25 - 1e-10 <= row.purity <= 1 + 1e-10:
        raise InvariantViolation(f"purity {row.purity} outside [1/4, 1] at t={row.t}")


def time_grid(t_max: float, steps: int) -> np.ndarray:
    return np.linspace(0.0, t_max, int(steps))


def _series(params, times):
    ctx = make_context(params)
    rows = []
    for t, state in zip(times, evolve(params, times, ctx)):
        row = OutputRow.from_state(params, state, evaluate(state, t))
        _check_row(row)
        rows.append(row)
    return rows


def run_timeseries(config: RunConfig) -> list[OutputRow]:
    """Correlations at ``steps`` equally spaced times in ``[0, t_max]``."""
    return _series(config.params, time_grid(config.t_max, config.steps))


def run_sweep(config: RunConfig) -> list[OutputRow]:
    """Correlations on the (lambda, t) grid, ordered by lambda then t."""
    times = time_grid(config.t_max, config.steps)
    rows = []
    for lam in config.lambdas():
        lam = float(lam)
        lp = lam if config.lambda_prime_policy == "equal" else config.params.lam_prime
        rows.extend(_series(replace(config.params, lam=lam, lam_prime=lp), times))
    return rows


def run(config: RunConfig) -> list[OutputRow]:
    if config.mode == "sweep":
        return run_sweep(config)
    return run_timeseries(config)


def _figure_presets():
    presets = {
        "fig1": dict(mode="sweep", params=ModelParams(0.25, 0.25, 500, *PURE_BELL),
                     lambda_min=0.25, lambda_max=2.0, lambda_steps=36,
                     lambda_prime_policy="equal"),
    }
    couplings = dict(zip("abcd", (0.5, 2.0, 3.5, 5.0)))
    for num, (lam, k) in {2: (0.75, PURE_BELL), 3: (1.25, PURE_BELL),
                          4: (0.75, MIXED_BELL), 5: (1.25, MIXED_BELL)}.items():
        for letter, lp in couplings.items():
            presets[f"fig{num}{letter}"] = dict(
                mode="timeseries", params=ModelParams(lam, lp, 1000, *k))
    return presets


FIGURE_PRESETS = _figure_presets()


def figure_config(name: str, out_dir=None, t_max: float = DEFAULT_T_MAX,
                  steps: int = DEFAULT_STEPS, emit_plot: bool = True) -> RunConfig:
    """Run configuration reproducing a named figure panel."""
    try:
        preset = FIGURE_PRESETS[name]
    except KeyError:
        raise InvalidParameterError(
            f"unknown figure {name!r}; choose from {', '.join(FIGURE_PRESETS)}") from None
    out = Path(out_dir) / f"{name}.csv" if out_dir is not None else None
    return RunConfig(t_max=t_max, steps=steps, out=out, emit_plot=emit_plot, **preset)


def _fmt(v: float) -> str:
    # repr gives the shortest string that round-trips
    return repr(float(v))


def plot_script(csv_name: str, mode: str) -> str:
    """gnuplot script for a CSV produced by :func:`emit_outputs`."""
    stem = Path(csv_name).stem
    lines = [
        'set datafile separator ","',
        "set terminal pngcairo size 900,600",
        f'set output "{stem}.png"',
        "set key outside",
    ]
    if mode == "sweep":
        lines += [
            'set xlabel "lambda"',
            'set ylabel "t"',
            'set zlabel "Q"',
            "set view map",
            f'splot "{csv_name}" every ::1 using 2:1:4 with points pt 5 ps 0.3 palette title "discord"',
        ]
    else:
        lines += [
            'set xlabel "t"',
            "set yrange [0:1.05]",
            f'plot "{csv_name}" every ::1 using 1:4 with lines title "Q", \\',
            f'     "{csv_name}" every ::1 using 1:8 with lines title "E"',
        ]
    return "\n".join(lines) + "\n"


def emit_outputs(rows, config: RunConfig) -> list[Path]:
    """Write the CSV (and optional plot script) for ``config.out``.

    Returns the paths written.
    """
    if config.out is None:
        raise InvalidParameterError("no output path configured")
    out = Path(config.out)
    written = []
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for row in rows:
                writer.writerow([_fmt(v) for v in row.values()])
        written.append(out)
        if config.emit_plot:
            script = out.with_suffix(".gp")
            script.write_text(plot_script(out.name, config.mode), encoding="utf-8")
            written.append(script)
    except OSError as exc:
        raise OSError(f"cannot write output {out}: {exc}") from exc
    return written
