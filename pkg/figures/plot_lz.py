#!/usr/bin/env python3
"""Two-level model figure: ground energy and its derivatives across lam_c.

Consumes one or more sweep CSVs of the two-level model (typically one with
eps = 0, the level crossing, and one with eps > 0, the avoided crossing)
and draws two panels:

  top:    E0(lam_i) per dataset
  bottom: dE0/dlam  (= avg_work/delta, solid) and
          d2E0/dlam2 (= -2 irr_work/delta^2, dashed)

Every plotted number is read from the CSV; nothing is recomputed.

Usage: plot_lz.py --in lz_eps0.csv [--in lz_eps05.csv ...] --out fig1.svg
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "quenchlab-figures"
import matplotlib.pyplot as plt

from sweep_csv import SweepCsvError, read_sweep_csv

_COLORS = ("tab:blue", "tab:green", "tab:orange", "tab:purple")


@dataclass
class LzFigureSummary:
    """What the figure shows, for tests and captions."""

    out_path: str
    datasets: int
    slope_sign_change: bool  # dE0/dlam changes sign across the grid


def plot_lz(csv_paths, out_path, xlim=None) -> LzFigureSummary:
    tables = [read_sweep_csv(p) for p in csv_paths]
    for p, t in zip(csv_paths, tables):
        if t.model != "lz":
            raise SweepCsvError(f"{p}: expected a two-level sweep, got {t.model!r}")
        if len(t) == 0:
            raise SweepCsvError(f"{p}: no rows")

    fig, (ax_e, ax_d) = plt.subplots(
        2, 1, figsize=(6.4, 6.4), sharex=True, gridspec_kw={"hspace": 0.08}
    )
    sign_change = False
    for i, (path, t) in enumerate(zip(csv_paths, tables)):
        color = _COLORS[i % len(_COLORS)]
        grid = t["grid_value"]
        slope = t["avg_work_per_delta"]
        curvature = [-2.0 * v for v in t["irr_per_delta2"]]
        label = f"dataset {i}: {path}"
        ax_e.plot(grid, t["e0_i"], color=color, lw=1.5, label=label)
        ax_d.plot(grid, slope, color=color, lw=1.5, label="dE0/dlam")
        ax_d.plot(grid, curvature, color=color, lw=1.2, ls="--",
                  label="d2E0/dlam2")
        finite = [s for s in slope if s == s]
        if finite and min(finite) < 0.0 < max(finite):
            sign_change = True

    ax_e.set_ylabel("ground energy E0")
    ax_e.legend(fontsize=7, loc="upper right")
    ax_d.set_ylabel("energy derivatives")
    ax_d.set_xlabel("control parameter lambda_i")
    ax_d.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax_d.legend(fontsize=7, loc="upper right")
    if xlim:
        ax_d.set_xlim(*xlim)

    fig.savefig(out_path, metadata={"Date": None})
    plt.close(fig)
    return LzFigureSummary(
        out_path=str(out_path), datasets=len(tables), slope_sign_change=sign_change
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="input sweep CSV (repeatable)")
    parser.add_argument("--out", required=True, help="output image (SVG or PNG)")
    parser.add_argument("--xlim", nargs=2, type=float, default=None,
                        help="x-axis range (default auto)")
    args = parser.parse_args(argv)
    try:
        summary = plot_lz(args.inputs, args.out, xlim=args.xlim)
    except (SweepCsvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {summary.out_path}: {summary.datasets} dataset(s), "
          f"slope sign change: {summary.slope_sign_change}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
