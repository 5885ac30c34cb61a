"""Unit and smoke tests for the figure scripts (CSV schema side)."""

import subprocess
import sys

import pytest

import plot_lz
import plot_phase_diagram
from sweep_csv import CSV_HEADER, SweepCsvError, bracket_jumps, read_sweep_csv


def _write_csv(path, rows, header=CSV_HEADER, comment="# handcrafted"):
    lines = [comment, header]
    for r in rows:
        lines.append(",".join(str(v) for v in r))
    path.write_text("\n".join(lines) + "\n")


def _lz_row(grid, slope, irr2=0.0):
    return ["lz", 1, "lambda", grid, 1e-05, -1.0, -1.0, slope * 1e-05, slope * 1e-05,
            0.0, 0.0, slope, irr2, 0.0, ""]


@pytest.fixture
def lz_csv(tmp_path):
    path = tmp_path / "lz.csv"
    rows = [_lz_row(0.5 + 0.1 * i, 1.0 if i < 5 else -1.0) for i in range(10)]
    _write_csv(path, rows)
    return path


def test_reader_round_trip(lz_csv):
    table = read_sweep_csv(lz_csv)
    assert len(table) == 10
    assert table.model == "lz"
    assert table["avg_work_per_delta"][:2] == [1.0, 1.0]


def test_reader_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    _write_csv(path, [], header=CSV_HEADER.replace("irr_work", "irrwork"))
    with pytest.raises(SweepCsvError) as err:
        read_sweep_csv(path)
    assert err.value.line == 2  # comment line is line 1


def test_reader_rejects_bad_field(tmp_path):
    path = tmp_path / "bad.csv"
    row = _lz_row(0.5, 1.0)
    row[3] = "notanumber"
    _write_csv(path, [row])
    with pytest.raises(SweepCsvError) as err:
        read_sweep_csv(path)
    assert err.value.line == 3


def test_bracket_jumps_merges_runs():
    grid = list(range(9))
    flat = [0.0] * 9
    assert bracket_jumps(grid, flat) == []
    step = [0, 0, 0, 0, 5, 5, 5, 5, 5]
    assert bracket_jumps(grid, step) == [(3, 4)]
    ramp = [0, 0, 0, 4, 8, 8, 8, 8, 8]
    assert bracket_jumps(grid, ramp) == [(2, 4)]


def test_plot_lz_smoke(lz_csv, tmp_path):
    out = tmp_path / "fig1.svg"
    summary = plot_lz.plot_lz([lz_csv], out)
    assert out.exists() and out.stat().st_size > 0
    assert out.read_bytes().startswith(b"<?xml")
    assert summary.slope_sign_change
    assert summary.datasets == 1


def test_plot_lz_png_opt_in(lz_csv, tmp_path):
    out = tmp_path / "fig1.png"
    plot_lz.plot_lz([lz_csv], out)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_lz_rejects_wrong_model(tmp_path):
    path = tmp_path / "ff.csv"
    row = _lz_row(0.5, 1.0)
    row[0] = "xx_ff"
    _write_csv(path, [row])
    with pytest.raises(SweepCsvError):
        plot_lz.plot_lz([path], tmp_path / "x.svg")


def test_plot_phase_diagram_smoke(tmp_path):
    path = tmp_path / "chain.csv"
    rows = []
    for i in range(12):
        grid = -3.0 + 0.5 * i
        slope = 5.5 if grid < -2.0 else -1.0 + 0.02 * i
        irr2 = 0.0 if grid < -2.0 else 1.0 - 0.05 * i
        r = _lz_row(grid, slope, irr2)
        r[0], r[1], r[2] = "xxz_ed", 12, "lambda_z"
        rows.append(r)
    _write_csv(path, rows)
    out = tmp_path / "fig2.svg"
    summary = plot_phase_diagram.plot_phase_diagram(path, out)
    assert out.read_bytes().startswith(b"<?xml")
    (interval,) = summary.jump_intervals["avg_work_per_delta"]
    assert interval[0] <= -2.0 <= interval[1] + 0.5
    assert summary.irr_peak_location is not None


def test_plot_phase_diagram_missing_column(lz_csv, tmp_path):
    with pytest.raises(SweepCsvError):
        plot_phase_diagram.plot_phase_diagram(
            lz_csv, tmp_path / "x.svg", columns=("no_such_column",)
        )


def test_deterministic_svg_output(lz_csv, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    plot_lz.plot_lz([lz_csv], a)
    plot_lz.plot_lz([lz_csv], b)
    assert a.read_bytes() == b.read_bytes()


def test_cli_entry_points(lz_csv, tmp_path):
    out = tmp_path / "cli.svg"
    code = plot_lz.main(["--in", str(lz_csv), "--out", str(out)])
    assert code == 0 and out.exists()
    code = plot_lz.main(["--in", str(tmp_path / "missing.csv"),
                         "--out", str(tmp_path / "y.svg")])
    assert code == 1


def test_standalone_invocation(lz_csv, tmp_path):
    # the scripts run as plain files; only the CSV schema connects the two
    # packages
    import plot_lz as mod

    out = tmp_path / "standalone.svg"
    proc = subprocess.run(
        [sys.executable, mod.__file__, "--in", str(lz_csv), "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
