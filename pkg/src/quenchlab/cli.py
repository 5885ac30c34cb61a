"""Command-line interface: sweep models, single sweeps, verification suites.

Exit codes: 0 success, 1 validation error (nothing written), 2 runtime
failure after partial output (the partial CSV ends with '# INCOMPLETE').

Values resolve as: explicit flag > QUENCHLAB_SEED (seed only) > config
file (--config, TOML or JSON) > built-in default.  The resolved values are
recorded in a '#' provenance line at the top of the CSV, which read_csv
ignores.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib


def _allow_leading_dash_values(parser: argparse.ArgumentParser) -> None:
    """Let values like '-3:3:121' or '-1e-3' follow a flag unquoted."""
    parser._negative_number_matcher = re.compile(r"^-\S+$")

from .chain import ChainSpec
from .errors import QuenchLabError, ValidationError
from .eigensolver import DEFAULT_SEED
from .landau_zener import LzParams
from .sweep import (
    CSV_HEADER,
    LZ_LAMBDA,
    GridSpec,
    SweepPlan,
    detect_jumps,
    iter_rows,
)
from .work_stats import FIELD_H, LAMBDA_Z
from . import sweep as sweep_module
from .verify import full_checks, quick_checks

_COLUMNS = CSV_HEADER.split(",")


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must be start:stop:steps, got {text!r}")
    try:
        return GridSpec(start=float(parts[0]), stop=float(parts[1]), steps=int(parts[2]))
    except ValueError as exc:
        raise ValidationError(f"bad grid {text!r}: {exc}") from exc


def _load_config(path: str) -> dict:
    try:
        if path.endswith(".json"):
            with open(path, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        else:
            with open(path, "rb") as fh:
                cfg = tomllib.load(fh)
    except (OSError, ValueError, tomllib.TOMLDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError(f"config {path} must hold a table of flag values")
    return cfg


def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """Merge defaults < config < environment (seed) < explicit flags."""
    resolved = dict(defaults)
    if args.config:
        cfg = _load_config(args.config)
        unknown = set(cfg) - set(defaults)
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        resolved.update(cfg)
    env_seed = os.environ.get("QUENCHLAB_SEED")
    if env_seed is not None:
        try:
            resolved["seed"] = int(env_seed, 0)
        except ValueError as exc:
            raise ValidationError(f"QUENCHLAB_SEED={env_seed!r} is not an integer") from exc
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    return resolved


def _add_common(parser: argparse.ArgumentParser, default_dlam: float) -> None:
    parser.add_argument("--grid", help="sweep grid start:stop:steps (parameter units)")
    parser.add_argument(
        "--dlam",
        type=float,
        help=f"quench step in parameter units [default {default_dlam:g}]",
    )
    parser.add_argument("--out", help="output CSV path (required)")
    parser.add_argument(
        "--seed", type=int, help=f"Lanczos start-vector seed [default {DEFAULT_SEED:#x}]"
    )
    parser.add_argument("--tol", type=float, help="eigensolver residual tolerance [default 1e-10]")
    parser.add_argument(
        "--workers", type=int, help="parallel grid workers [default: available cores]"
    )
    parser.add_argument("--config", help="TOML or JSON file with default flag values")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quenchlab",
        description="Sudden-quench work statistics of quantum critical models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lz = sub.add_parser("lz", help="two-level (Landau-Zener) closed-form sweep")
    lz.add_argument("--delta", type=float, help="level splitting Delta (energy) [default 2]")
    lz.add_argument("--a", type=float, help="field coupling a (energy per unit lambda) [default 1]")
    lz.add_argument("--eps", type=float, help="off-diagonal coupling eps >= 0 (energy) [default 0]")
    _add_common(lz, 1e-5)

    chain = sub.add_parser("chain", help="exact-diagonalization spin-chain sweep")
    chain.add_argument("--model", choices=("xxz", "xx"),
                       help="xxz: sweep the zz coupling; xx: sweep the field [default xxz]")
    chain.add_argument("--n", type=int, help="number of sites (2..24) [default 12]")
    chain.add_argument("--jx", type=float, help="x coupling (energy, J=1 convention) [default 1]")
    chain.add_argument("--jy", type=float, help="y coupling (energy) [default 1]")
    chain.add_argument("--lambda-z", dest="lambda_z", type=float,
                       help="fixed zz coupling for the xx model (energy) [default 0]")
    chain.add_argument("--field", type=float,
                       help="fixed uniform field for the xxz model (energy) [default 0]")
    chain.add_argument("--pin", type=float,
                       help="pinning field at one site (energy) [default -1e-3]")
    chain.add_argument("--pin-site", dest="pin_site", type=int,
                       help="pinned site index [default 0]")
    chain.add_argument("--boundary", choices=("open", "periodic"),
                       help="chain boundary [default open]")
    _add_common(chain, 1e-4)

    xxff = sub.add_parser("xx-ff", help="free-fermion XX-chain field sweep (large n)")
    xxff.add_argument("--n", type=int, help="number of sites >= 2 [default 512]")
    xxff.add_argument("--j", type=float, help="XX coupling J (energy) [default 1]")
    xxff.add_argument("--boundary", choices=("open", "periodic"),
                      help="chain boundary [default open]")
    _add_common(xxff, 1e-3)

    ver = sub.add_parser("verify", help="run the built-in verification suites")
    ver.add_argument("--level", choices=("quick", "full"), default="quick",
                     help="quick: closed-form oracles + n<=8 cross-checks; "
                          "full: the complete acceptance battery [default quick]")
    ver.add_argument("--workers", type=int, help="parallel grid workers [default 2]")

    for p in (parser, lz, chain, xxff, ver):
        _allow_leading_dash_values(p)
    return parser


_LZ_DEFAULTS = {
    "delta": 2.0, "a": 1.0, "eps": 0.0, "grid": "0.5:1.5:101", "dlam": 1e-5,
    "out": None, "seed": DEFAULT_SEED, "tol": 1e-10, "workers": None, "config": None,
}
_CHAIN_DEFAULTS = {
    "model": "xxz", "n": 12, "jx": 1.0, "jy": 1.0, "lambda_z": 0.0, "field": 0.0,
    "pin": -1e-3, "pin_site": 0, "boundary": "open", "grid": "-3:3:121",
    "dlam": 1e-4, "out": None, "seed": DEFAULT_SEED, "tol": 1e-10,
    "workers": None, "config": None,
}
_XXFF_DEFAULTS = {
    "n": 512, "j": 1.0, "boundary": "open", "grid": "0:3:301", "dlam": 1e-3,
    "out": None, "seed": DEFAULT_SEED, "tol": 1e-10, "workers": None, "config": None,
}


def _make_plan(command: str, opts: dict) -> SweepPlan:
    grid = _parse_grid(opts["grid"])
    common = dict(grid=grid, delta=opts["dlam"], seed=opts["seed"], tol=opts["tol"],
                  workers=opts["workers"] or 1, out_path=opts["out"])
    if command == "lz":
        return SweepPlan(
            model="lz",
            param=LZ_LAMBDA,
            lz_params=LzParams(delta=opts["delta"], a=opts["a"], eps=opts["eps"]),
            **common,
        )
    if command == "chain":
        spec = ChainSpec(
            n_sites=opts["n"], jx=opts["jx"], jy=opts["jy"],
            lambda_z=opts["lambda_z"], field_h=opts["field"],
            pin_strength=opts["pin"], pin_site=opts["pin_site"],
            boundary=opts["boundary"],
        )
        if opts["model"] == "xxz":
            return SweepPlan(model="xxz_ed", param=LAMBDA_Z, chain=spec, **common)
        return SweepPlan(model="xx_ed", param=FIELD_H, chain=spec, **common)
    return SweepPlan(
        model="xx_ff", param=FIELD_H, ff_n=opts["n"], ff_j=opts["j"],
        ff_boundary=opts["boundary"], **common,
    )


def _provenance(command: str, opts: dict) -> str:
    pairs = " ".join(f"{k}={opts[k]}" for k in sorted(opts) if k != "config")
    return f"quenchlab {command} {pairs}"


def _run_sweep_command(command: str, args: argparse.Namespace) -> int:
    defaults = {"lz": _LZ_DEFAULTS, "chain": _CHAIN_DEFAULTS, "xx-ff": _XXFF_DEFAULTS}[command]
    opts = _resolve(args, defaults)
    if not opts["out"]:
        raise ValidationError("--out is required for sweep commands")
    opts["workers"] = opts["workers"] or os.cpu_count() or 1
    plan = _make_plan(command, opts)  # validates every guard before any output

    rows = []
    with open(opts["out"], "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {_provenance(command, opts)}\n")
        fh.write(CSV_HEADER + "\n")
        try:
            for row in iter_rows(plan):
                rows.append(row)
                fh.write(
                    ",".join(
                        sweep_module._format_value(c, getattr(row, c)) for c in _COLUMNS
                    )
                    + "\n"
                )
        except Exception as exc:  # runtime failure: keep the partial CSV
            fh.write("# INCOMPLETE\n")
            print(f"error: sweep aborted after {len(rows)} rows: {exc}", file=sys.stderr)
            return 2

    print(f"wrote {len(rows)} rows to {opts['out']}")
    if len(rows) >= 4:
        for column in ("avg_work_per_delta", "irr_per_delta2"):
            for j in detect_jumps(rows, column):
                print(
                    f"jump report [{column}]: interval "
                    f"({j.interval[0]:g}, {j.interval[1]:g}), size {j.size:.6g}"
                )
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    workers = args.workers or 2
    checks = quick_checks(workers) if args.level == "quick" else full_checks(workers)
    failed = 0
    for result in checks:
        print(result.line())
        failed += 0 if result.passed else 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "verify":
            return _run_verify(args)
        return _run_sweep_command(args.command, args)
    except QuenchLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
