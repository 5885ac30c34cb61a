"""Reader for quenchlab sweep CSV files and grid-side jump bracketing.

This package talks to the solver only through its public CSV schema:
comment lines start with '#', the header is fixed, floats carry 17
significant digits.  Nothing here recomputes physics; every number comes
out of the file.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass


CSV_HEADER = (
    "model,n_sites,param,grid_value,delta,e0_i,e0_f,avg_work,delta_u,"
    "irr_work,variance,avg_work_per_delta,irr_per_delta2,eq2_discrepancy,flags"
)
_COLUMNS = CSV_HEADER.split(",")
_TEXT_COLUMNS = ("model", "param", "flags")


class SweepCsvError(ValueError):
    """The file does not conform to the sweep CSV schema."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


@dataclass
class SweepTable:
    """Column-oriented view of one sweep CSV."""

    columns: dict

    def __len__(self):
        return len(self.columns["grid_value"])

    def __getitem__(self, name):
        return self.columns[name]

    @property
    def model(self) -> str:
        return self.columns["model"][0] if len(self) else ""


def read_sweep_csv(path) -> SweepTable:
    columns = {name: [] for name in _COLUMNS}
    header_seen = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if not header_seen:
                if line != CSV_HEADER:
                    raise SweepCsvError(
                        f"line {lineno}: unexpected header {line!r}", line=lineno
                    )
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != len(_COLUMNS):
                raise SweepCsvError(
                    f"line {lineno}: {len(parts)} fields, expected {len(_COLUMNS)}",
                    line=lineno,
                )
            for name, text in zip(_COLUMNS, parts):
                if name in _TEXT_COLUMNS:
                    columns[name].append(text)
                elif name == "n_sites":
                    columns[name].append(int(text))
                else:
                    try:
                        columns[name].append(float(text))
                    except ValueError as exc:
                        raise SweepCsvError(
                            f"line {lineno}: bad {name} value {text!r}", line=lineno
                        ) from exc
    if not header_seen:
        raise SweepCsvError("missing header line")
    return SweepTable(columns=columns)


def bracket_jumps(grid, values, threshold_factor=20.0, floor=1e-12):
    """Grid intervals where a column changes far faster than typically.

    Adjacent differences above threshold_factor times the column's median
    absolute difference are flagged; consecutive flagged pairs merge into
    one bracketing interval.  Mirrors the solver's reported jump intervals
    so figures can shade them from CSV data alone.
    """
    diffs = [values[i] - values[i + 1] for i in range(len(values) - 1)]
    finite = [d for d in diffs if d == d]  # drop NaNs
    if not finite:
        return []
    median = statistics.median(abs(d) for d in finite)
    threshold = threshold_factor * max(median, floor)
    intervals = []
    run_start = None
    for i, d in enumerate(diffs):
        if d == d and abs(d) > threshold:
            if run_start is None:
                run_start = i
        elif run_start is not None:
            intervals.append((grid[run_start], grid[i]))
            run_start = None
    if run_start is not None:
        intervals.append((grid[run_start], grid[len(diffs)]))
    return intervals
