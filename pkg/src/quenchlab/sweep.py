"""Phase-diagram sweep engine with jump detection and CSV persistence.

A sweep walks a grid of initial parameter values; at each grid point the
system starts in the ground state of H(value) and is suddenly quenched by
the plan's delta.  One row per grid point records the energies, the work
moments, the normalized columns <W>/delta and W_irr/delta^2, and a
second-order-expansion quality figure.  Grid points are independent pure
computations: rows are identical for any execution order or worker count,
and two runs of one plan produce byte-identical CSV files.

Grid points that would land exactly on a known degeneracy (the two-level
crossing lam_c, or a free-fermion zero mode) are nudged up by half a step.
Remaining per-point failures degrade to flagged rows, never to a lost
sweep.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass

import numpy as np

from . import landau_zener as lz
from .chain import ChainSpec, build_basis, build_hamiltonian, build_potential
from .eigensolver import DEFAULT_SEED, ground_state
from .errors import (
    ConvergenceError,
    DegeneratePointError,
    QuenchLabError,
    SchemaError,
    ValidationError,
    ZeroModeError,
)
from .free_fermion import xx_crossing_fields, xx_ground_energy, xx_quench_moments
from .work_stats import FIELD_H, LAMBDA_Z, average_work_hf, irr_second_order_check

MODELS = ("lz", "xxz_ed", "xx_ed", "xx_ff")

#: LZ sweeps quench the two-level model's own field parameter
LZ_LAMBDA = "lambda"

#: exact CSV schema, in column order
CSV_HEADER = (
    "model,n_sites,param,grid_value,delta,e0_i,e0_f,avg_work,delta_u,"
    "irr_work,variance,avg_work_per_delta,irr_per_delta2,eq2_discrepancy,flags"
)

DEFAULT_THRESHOLD_FACTOR = 20.0
#: floor for the median adjacent difference when a column is constant
_MEDIAN_FLOOR = 1e-12
#: proximity (in parameter units) at which a grid point counts as degenerate
_NUDGE_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid start..stop with `steps` points, inclusive."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if not self.start < self.stop:
            raise ValidationError(f"grid start {self.start} must be < stop {self.stop}")
        if self.steps < 2:
            raise ValidationError(f"grid needs >= 2 steps, got {self.steps}")

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.steps - 1)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepPlan:
    """Everything needed to reproduce one sweep deterministically."""

    model: str
    grid: GridSpec
    delta: float
    param: str = LAMBDA_Z
    lz_params: lz.LzParams | None = None
    chain: ChainSpec | None = None
    ff_n: int | None = None
    ff_j: float = 1.0
    ff_boundary: str = "open"
    seed: int = DEFAULT_SEED
    tol: float = 1e-10
    workers: int = 1
    out_path: str | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValidationError(f"unknown model {self.model!r}; expected {MODELS}")
        if self.delta == 0.0:
            raise ValidationError("quench delta must be nonzero")
        if self.model == "lz":
            if self.lz_params is None:
                raise ValidationError("lz sweeps need lz_params")
            if self.param != LZ_LAMBDA:
                raise ValidationError("lz sweeps quench the 'lambda' parameter")
        elif self.model in ("xxz_ed", "xx_ed"):
            if self.chain is None:
                raise ValidationError(f"{self.model} sweeps need a chain spec")
            if self.param not in (LAMBDA_Z, FIELD_H):
                raise ValidationError("chain sweeps quench lambda_z or field_h")
        else:  # xx_ff
            if self.ff_n is None or self.ff_n < 2:
                raise ValidationError("xx_ff sweeps need ff_n >= 2")
            if self.param != FIELD_H:
                raise ValidationError("xx_ff sweeps quench the field_h parameter")
            if self.ff_boundary not in ("open", "periodic"):
                raise ValidationError(f"bad boundary {self.ff_boundary!r}")

    @property
    def n_sites(self) -> int:
        if self.model == "lz":
            return 1
        if self.model == "xx_ff":
            return int(self.ff_n)
        return self.chain.n_sites


@dataclass(frozen=True)
class SweepRow:
    """One grid point's quench record; see CSV_HEADER for the column order."""

    model: str
    n_sites: int
    param: str
    grid_value: float
    delta: float
    e0_i: float
    e0_f: float
    avg_work: float
    delta_u: float
    irr_work: float
    variance: float
    avg_work_per_delta: float
    irr_per_delta2: float
    eq2_discrepancy: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class Jump:
    """A detected discontinuity between two adjacent grid points."""

    interval: tuple[float, float]
    size: float  # left value minus right value
    left_index: int

    @property
    def location(self) -> float:
        return 0.5 * (self.interval[0] + self.interval[1])


def _degeneracy_points(plan: SweepPlan) -> np.ndarray:
    if plan.model == "lz":
        return np.array([plan.lz_params.lambda_c])
    if plan.model == "xx_ff":
        return xx_crossing_fields(plan.ff_n, plan.ff_j, plan.ff_boundary)
    if plan.model == "xx_ed" and plan.param == FIELD_H:
        return xx_crossing_fields(plan.chain.n_sites, plan.chain.jx, plan.chain.boundary)
    return np.array([])  # xxz_ed: the pinning field owns degeneracy lifting


def build_grid(plan: SweepPlan) -> np.ndarray:
    """Grid values with points nudged off exact degeneracies by half a step."""
    values = plan.grid.values()
    points = _degeneracy_points(plan)
    if points.size == 0:
        return values
    half = 0.5 * plan.grid.step
    for i, g in enumerate(values):
        if np.min(np.abs(points - g)) <= _NUDGE_TOL * max(1.0, abs(g)):
            values[i] = g + half
    return values


def _failed_row(plan: SweepPlan, value: float, flag: str) -> SweepRow:
    nan = float("nan")
    return SweepRow(
        model=plan.model,
        n_sites=plan.n_sites,
        param=plan.param,
        grid_value=value,
        delta=plan.delta,
        e0_i=nan,
        e0_f=nan,
        avg_work=nan,
        delta_u=nan,
        irr_work=nan,
        variance=nan,
        avg_work_per_delta=nan,
        irr_per_delta2=nan,
        eq2_discrepancy=nan,
        flags=(flag,),
    )


def _make_row(plan, value, e0_i, e0_f, avg, variance, e0_lo, flags) -> SweepRow:
    du = e0_f - e0_i
    irr = avg - du
    eq2 = irr_second_order_check((e0_lo, e0_i, e0_f), plan.delta, irr)
    return SweepRow(
        model=plan.model,
        n_sites=plan.n_sites,
        param=plan.param,
        grid_value=float(value),
        delta=plan.delta,
        e0_i=float(e0_i),
        e0_f=float(e0_f),
        avg_work=float(avg),
        delta_u=float(du),
        irr_work=float(irr),
        variance=float(variance),
        avg_work_per_delta=float(avg) / plan.delta,
        irr_per_delta2=float(irr) / plan.delta**2,
        eq2_discrepancy=float(eq2),
        flags=tuple(flags),
    )


def _lz_row(plan: SweepPlan, value: float) -> SweepRow:
    p = plan.lz_params
    dl = plan.delta
    try:
        e0_i = lz.lz_ground_energy(p, value)
        e0_f = lz.lz_ground_energy(p, value + dl)
        avg = lz.lz_average_work(p, value, dl)
        variance = lz.lz_work_distribution(p, value, value + dl).variance()
        e0_lo = lz.lz_ground_energy(p, value - dl)
    except DegeneratePointError:
        return _failed_row(plan, value, "degenerate_point")
    return _make_row(plan, value, e0_i, e0_f, avg, variance, e0_lo, ())


def _chain_row(plan: SweepPlan, value: float) -> SweepRow:
    spec_i = plan.chain.quenched(plan.param, value)
    basis = build_basis(spec_i.n_sites)
    h_i = build_hamiltonian(spec_i, basis)
    v_op = build_potential(spec_i, plan.param, basis)
    flags = []
    try:
        gs_i = ground_state(h_i, tol=plan.tol, seed=plan.seed)
        psi0 = gs_i.ground_vector
        if gs_i.degenerate:
            flags.append("degenerate_gap_i")

        # warm, sector-complete start: psi0 plus a seeded random admixture
        rng = np.random.default_rng(plan.seed)
        noise = rng.standard_normal(basis.size)
        start = psi0 + 0.5 * noise / np.linalg.norm(noise)

        h_f = build_hamiltonian(plan.chain.quenched(plan.param, value + plan.delta), basis)
        gs_f = ground_state(h_f, tol=plan.tol, seed=plan.seed, start=start)
        if gs_f.degenerate:
            flags.append("degenerate_gap_f")
        h_lo = build_hamiltonian(plan.chain.quenched(plan.param, value - plan.delta), basis)
        gs_lo = ground_state(h_lo, tol=plan.tol, seed=plan.seed, start=start)
    except ConvergenceError:
        return _failed_row(plan, value, "solver_error:convergence")

    avg = average_work_hf(psi0, v_op, plan.delta)
    hf_psi = h_f.matvec(psi0)
    variance = max(float(hf_psi @ hf_psi) - float(psi0 @ hf_psi) ** 2, 0.0)
    return _make_row(
        plan, value, gs_i.ground_energy, gs_f.ground_energy, avg, variance,
        gs_lo.ground_energy, flags,
    )


def _xx_ff_row(plan: SweepPlan, value: float) -> SweepRow:
    n, j, bc = plan.ff_n, plan.ff_j, plan.ff_boundary
    try:
        m = xx_quench_moments(n, j, value, plan.delta, bc)
        e0_i = xx_ground_energy(n, j, value, bc)
        e0_lo = xx_ground_energy(n, j, value - plan.delta, bc)
    except ZeroModeError:
        return _failed_row(plan, value, "zero_mode")
    e0_f = e0_i + m.delta_u
    return _make_row(plan, value, e0_i, e0_f, m.avg_work, m.variance, e0_lo, ())


_ROW_FUNCS = {"lz": _lz_row, "xxz_ed": _chain_row, "xx_ed": _chain_row, "xx_ff": _xx_ff_row}


def iter_rows(plan: SweepPlan, workers: int | None = None):
    """Yield rows in grid order; per-point work may run on a thread pool."""
    values = build_grid(plan)
    row_func = _ROW_FUNCS[plan.model]
    n_workers = plan.workers if workers is None else workers
    if n_workers <= 1:
        for v in values:
            yield row_func(plan, v)
        return
    with concurrent.futures.ThreadPoolExecutor(max_workers=n_workers) as pool:
        yield from pool.map(lambda v: row_func(plan, v), values)


def run_sweep(plan: SweepPlan, workers: int | None = None) -> list[SweepRow]:
    """All rows of the plan, ordered by grid index."""
    return list(iter_rows(plan, workers=workers))


def detect_jumps(
    rows, column: str, threshold_factor: float = DEFAULT_THRESHOLD_FACTOR
) -> list[Jump]:
    """Locate discontinuities of a column against its typical grid change.

    An adjacent pair is flagged when |row[i] - row[i+1]| exceeds
    threshold_factor times the median absolute adjacent difference of the
    column (floored at 1e-12 for constant columns).  Runs of consecutive
    flagged pairs belong to one discontinuity and are merged: each jump
    reports the full bracketing grid interval and the column drop (left
    value minus right value) across it.
    """
    if len(rows) < 4:
        raise ValidationError(f"jump detection needs >= 4 rows, got {len(rows)}")
    vals = np.array([getattr(r, column) for r in rows], dtype=float)
    grid = np.array([r.grid_value for r in rows], dtype=float)
    diffs = vals[:-1] - vals[1:]
    finite = np.isfinite(diffs)
    if not finite.any():
        return []
    median = float(np.median(np.abs(diffs[finite])))
    threshold = threshold_factor * max(median, _MEDIAN_FLOOR)
    flagged = np.flatnonzero(finite & (np.abs(diffs) > threshold))
    jumps = []
    run_start = None
    prev = None
    for i in [*flagged, None]:
        if run_start is not None and (i is None or i != prev + 1):
            jumps.append(
                Jump(
                    interval=(float(grid[run_start]), float(grid[prev + 1])),
                    size=float(vals[run_start] - vals[prev + 1]),
                    left_index=int(run_start),
                )
            )
            run_start = None
        if i is not None:
            if run_start is None:
                run_start = i
            prev = i
    return jumps


# --- CSV persistence ---------------------------------------------------

_COLUMNS = CSV_HEADER.split(",")
_FLOAT_COLUMNS = tuple(
    c for c in _COLUMNS if c not in ("model", "n_sites", "param", "flags")
)


def _format_value(name: str, value) -> str:
    if name in ("model", "param"):
        return str(value)
    if name == "n_sites":
        return str(int(value))
    if name == "flags":
        return ";".join(value)
    return format(float(value), ".17g")


def write_csv(rows, path, provenance: str | None = None) -> None:
    """Write rows under the fixed schema; floats carry 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if provenance:
            for line in provenance.splitlines():
                fh.write(f"# {line}\n")
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(
                ",".join(_format_value(c, getattr(row, c)) for c in _COLUMNS) + "\n"
            )


def read_csv(path) -> list[SweepRow]:
    """Parse a sweep CSV back into rows, skipping '#' comment lines."""
    rows: list[SweepRow] = []
    header_seen = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if not header_seen:
                if line != CSV_HEADER:
                    got = line.split(",")
                    for pos, expected in enumerate(_COLUMNS):
                        if pos >= len(got) or got[pos] != expected:
                            raise SchemaError(
                                f"line {lineno}: header column {pos + 1} is "
                                f"{got[pos] if pos < len(got) else '<missing>'!r}, "
                                f"expected {expected!r}",
                                line=lineno,
                            )
                    raise SchemaError(
                        f"line {lineno}: header has extra columns", line=lineno
                    )
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != len(_COLUMNS):
                raise SchemaError(
                    f"line {lineno}: expected {len(_COLUMNS)} fields, got {len(parts)}",
                    line=lineno,
                )
            record = dict(zip(_COLUMNS, parts))
            try:
                rows.append(
                    SweepRow(
                        model=record["model"],
                        n_sites=int(record["n_sites"]),
                        param=record["param"],
                        flags=tuple(t for t in record["flags"].split(";") if t),
                        **{c: float(record[c]) for c in _FLOAT_COLUMNS},
                    )
                )
            except ValueError as exc:
                raise SchemaError(f"line {lineno}: {exc}", line=lineno) from exc
    if not header_seen:
        raise SchemaError("missing header line", line=None)
    return rows
