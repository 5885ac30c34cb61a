#!/usr/bin/env python3
"""Phase-diagram figure: work moments across a sweep, jumps shaded.

Scatters the normalized average work (filled blue circles) and the
normalized irreversible work (empty green circles) against the sweep grid,
shades the intervals where a column jumps, and marks the grid maximum of
the irreversible-work column.  Serves both the spin-chain sweeps (jump at
the first-order point, nothing at the BKT point) and the free-fermion
field sweeps (susceptibility peak at the band edge).

Every plotted number is read from the CSV; nothing is recomputed.

Usage: plot_phase_diagram.py --in xxz.csv --out fig2.svg
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "quenchlab-figures"
import matplotlib.pyplot as plt

from sweep_csv import SweepCsvError, bracket_jumps, read_sweep_csv

DEFAULT_COLUMNS = ("avg_work_per_delta", "irr_per_delta2")


@dataclass
class PhaseFigureSummary:
    """What the figure shows, for tests and captions."""

    out_path: str
    jump_intervals: dict  # column -> list of (lo, hi)
    irr_peak_location: float | None


def plot_phase_diagram(csv_path, out_path, columns=DEFAULT_COLUMNS,
                       shade_column=None, xlim=None) -> PhaseFigureSummary:
    table = read_sweep_csv(csv_path)
    if len(table) < 2:
        raise SweepCsvError(f"{csv_path}: need at least two rows to plot")
    missing = [c for c in columns if c not in table.columns]
    if missing:
        raise SweepCsvError(f"{csv_path}: unknown columns {missing}")
    grid = table["grid_value"]

    fig, axes = plt.subplots(
        len(columns), 1, figsize=(6.4, 3.2 * len(columns)), sharex=True,
        gridspec_kw={"hspace": 0.1}, squeeze=False,
    )
    styles = {
        "avg_work_per_delta": dict(marker="o", color="tab:blue", mfc="tab:blue",
                                   label="average work / delta"),
        "irr_per_delta2": dict(marker="o", color="tab:green", mfc="none",
                               label="irreversible work / delta^2"),
    }

    jump_intervals = {}
    irr_peak = None
    shade_column = shade_column or columns[0]
    for ax, column in zip(axes[:, 0], columns):
        values = table[column]
        style = styles.get(column, dict(marker="o", color="0.3", mfc="0.3",
                                        label=column))
        ax.plot(grid, values, ls="none", ms=3.5, **style)
        ax.set_ylabel(style["label"], fontsize=8)
        intervals = bracket_jumps(grid, values)
        jump_intervals[column] = intervals
        if column == shade_column:
            for lo, hi in intervals:
                for a in axes[:, 0]:
                    a.axvspan(lo, hi, color="tab:red", alpha=0.15, zorder=0)
        if column == "irr_per_delta2":
            finite = [(v, g) for v, g in zip(values, grid) if not math.isnan(v)]
            if finite:
                peak_val, irr_peak = max(finite)
                ax.plot([irr_peak], [peak_val], marker="v", color="tab:red",
                        ms=8, ls="none", label="grid maximum")
        ax.legend(fontsize=7, loc="best")
    axes[-1, 0].set_xlabel(f"sweep parameter ({table['param'][0]})")
    if xlim:
        axes[-1, 0].set_xlim(*xlim)

    fig.savefig(out_path, metadata={"Date": None})
    plt.close(fig)
    return PhaseFigureSummary(
        out_path=str(out_path), jump_intervals=jump_intervals,
        irr_peak_location=irr_peak,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="input", required=True, help="input sweep CSV")
    parser.add_argument("--out", required=True, help="output image (SVG or PNG)")
    parser.add_argument("--columns", default=",".join(DEFAULT_COLUMNS),
                        help="comma-separated row columns to plot")
    parser.add_argument("--xlim", nargs=2, type=float, default=None,
                        help="x-axis range (default auto)")
    args = parser.parse_args(argv)
    try:
        summary = plot_phase_diagram(
            args.input, args.out, columns=tuple(args.columns.split(",")),
            xlim=args.xlim,
        )
    except (SweepCsvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {summary.out_path}")
    for column, intervals in summary.jump_intervals.items():
        for lo, hi in intervals:
            print(f"  jump in {column}: ({lo:g}, {hi:g})")
    if summary.irr_peak_location is not None:
        print(f"  irr_per_delta2 grid maximum at {summary.irr_peak_location:g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
