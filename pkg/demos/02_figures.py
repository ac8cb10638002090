"""Regenerate the figure data sets as CSV plus gnuplot scripts.

Usage: ``python demos/02_figures.py [out_dir]`` (default ``figures``).
Afterwards ``cd figures && gnuplot fig3d.gp`` renders a PNG. The same
output is available from ``lmg-discord figure all --out-dir figures``.
"""
import sys
import time
from pathlib import Path

from lmg_discord.runs import FIGURE_PRESETS, emit_outputs, figure_config, run

out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")

for name in FIGURE_PRESETS:
    cfg = figure_config(name, out_dir)
    p = cfg.params
    start = time.perf_counter()
    rows = run(cfg)
    paths = emit_outputs(rows, cfg)
    print(f"{name:6s} lambda={p.lam:<5} lambda'={p.lam_prime:<4} N={p.n_spins:<5}"
          f" k=({p.kx}, {p.ky}, {p.kz})  {len(rows):6d} rows  "
          f"{time.perf_counter() - start:5.2f} s  -> {paths[0]}")
