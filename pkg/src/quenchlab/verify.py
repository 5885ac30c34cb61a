"""Built-in verification suites: the acceptance criteria behind `verify`.

Each criterion returns a CheckResult with a one-line detail string; the
suite object caches the expensive sweeps so later criteria (ferro
adiabaticity, null-signal, universal invariants) reuse them.  The pytest
acceptance module drives exactly these checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from . import landau_zener as lz
from .chain import ChainSpec, build_basis, build_hamiltonian, build_potential
from .eigensolver import full_spectrum, ground_state
from .free_fermion import xx_ground_energy, xx_magnetization, xx_quench_moments
from .sweep import LZ_LAMBDA, GridSpec, SweepPlan, detect_jumps, run_sweep
from .work_stats import (
    FIELD_H,
    LAMBDA_Z,
    average_work_hf,
    moments,
    work_distribution,
)

LZ_JUMP_TOL = 1e-9
EQ8_REL_TOL_FACTOR = 5.0  # times dlam
ORACLE_ED_TOL = 1e-9
ORACLE_LZ_TOL = 1e-12
CLAUSIUS_TOL = 1e-12
NORM_TOL = 1e-12
MIN_SUPPORT_TOL = 1e-10
FIRST_MOMENT_TOL = 1e-10
COMMUTING_VAR_TOL = 1e-18
ADIABATIC_TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.seconds:.2f}s): {self.detail}"


def _result(name, t0, failures, detail_ok) -> CheckResult:
    dt = time.perf_counter() - t0
    if failures:
        return CheckResult(name, False, "; ".join(failures), dt)
    return CheckResult(name, True, detail_ok, dt)


class AcceptanceSuite:
    """Caches sweeps and oracle artifacts shared between criteria."""

    def __init__(self, workers: int = 2):
        self.workers = workers
        self._cache: dict = {}
        # instances accumulated for the universal-invariants criterion:
        # (label, dist, delta_u, avg_hf)
        self.instances: list = []
        self.rows_collections: list = []

    # -- cached artifacts -------------------------------------------------

    def lz_sweep(self):
        if "lz_sweep" not in self._cache:
            plan = SweepPlan(
                model="lz",
                grid=GridSpec(0.5, 1.5, 101),
                delta=1e-5,
                param=LZ_LAMBDA,
                lz_params=lz.LzParams(delta=2.0, a=1.0, eps=0.0),
            )
            t0 = time.perf_counter()
            rows = run_sweep(plan)
            self._cache["lz_sweep"] = (rows, time.perf_counter() - t0)
            self.rows_collections.append(("lz_sweep", rows))
        return self._cache["lz_sweep"]

    def xxz_sweep(self, pin: float):
        key = ("xxz", pin)
        if key not in self._cache:
            plan = SweepPlan(
                model="xxz_ed",
                grid=GridSpec(-3.0, 3.0, 121),
                delta=1e-4,
                param=LAMBDA_Z,
                chain=ChainSpec(n_sites=12, jx=1.0, jy=1.0, pin_strength=pin),
            )
            t0 = time.perf_counter()
            rows = run_sweep(plan, workers=self.workers)
            self._cache[key] = (rows, time.perf_counter() - t0)
            self.rows_collections.append((f"xxz_pin{pin}", rows))
        return self._cache[key]

    def ff_sweep(self, n: int):
        key = ("ff", n)
        if key not in self._cache:
            plan = SweepPlan(
                model="xx_ff",
                grid=GridSpec(0.0, 3.0, 301),
                delta=1e-3,
                param=FIELD_H,
                ff_n=n,
            )
            t0 = time.perf_counter()
            rows = run_sweep(plan)
            self._cache[key] = (rows, time.perf_counter() - t0)
            self.rows_collections.append((f"ff_n{n}", rows))
        return self._cache[key]

    # -- criteria ----------------------------------------------------------

    def criterion_1(self) -> CheckResult:
        """LZ latent jump: <W>/dlam = +-1 across lam_c, one jump of size 2a."""
        t0 = time.perf_counter()
        rows, elapsed = self.lz_sweep()
        failures = []
        lam_c = 1.0
        for r in rows:
            want = 1.0 if r.grid_value < lam_c else -1.0
            if abs(r.avg_work_per_delta - want) > LZ_JUMP_TOL:
                failures.append(
                    f"row at {r.grid_value}: avg/dlam={r.avg_work_per_delta}, want {want}"
                )
        jumps = detect_jumps(rows, "avg_work_per_delta")
        if len(jumps) != 1:
            failures.append(f"{len(jumps)} jumps detected, want 1")
        elif abs(jumps[0].size - 2.0) > LZ_JUMP_TOL:
            failures.append(f"jump size {jumps[0].size}, want 2 +- 1e-9")
        if elapsed >= 1.0:
            failures.append(f"sweep took {elapsed:.2f}s, budget 1s")
        return _result(
            "criterion 1: LZ latent jump",
            t0,
            failures,
            f"101 rows, one jump of size {jumps[0].size:.12f} in {elapsed * 1e3:.0f}ms",
        )

    def criterion_2(self) -> CheckResult:
        """Divergent irreversible work at the avoided crossing: dlam^2 a^2/(2 eps)."""
        t0 = time.perf_counter()
        dlam = 1e-3
        failures = []
        values = {}
        for eps in (0.1, 0.05, 0.025):
            p = lz.LzParams(delta=2.0, a=1.0, eps=eps)
            irr = lz.lz_irr_work(p, p.lambda_c, dlam, mode="exact")
            ref = dlam**2 / (2.0 * eps)
            values[eps] = irr
            rel = abs(irr - ref) / ref
            if rel > EQ8_REL_TOL_FACTOR * dlam:
                failures.append(f"eps={eps}: rel err {rel:.2e} > {5 * dlam:.0e}")
        for eps in (0.1, 0.05):
            ratio = values[eps / 2] / values[eps]
            if abs(ratio - 2.0) / 2.0 > EQ8_REL_TOL_FACTOR * dlam:
                failures.append(f"halving eps={eps}: ratio {ratio:.6f}, want 2")
        elapsed = time.perf_counter() - t0
        if elapsed >= 1.0:
            failures.append(f"took {elapsed:.2f}s, budget 1s")
        return _result(
            "criterion 2: 1/eps divergence at the avoided crossing",
            t0,
            failures,
            f"W_irr*2eps/dlam^2 = "
            + ", ".join(f"{2 * e * v / dlam**2:.6f}" for e, v in values.items()),
        )

    def criterion_3(self) -> CheckResult:
        """Second-order expansion error shrinks ~10x per dlam decade."""
        t0 = time.perf_counter()
        p = lz.LzParams(delta=2.0, a=1.0, eps=0.5)
        lam_i = 0.75  # off-critical: the cubic term must not vanish
        disc = {}
        for dlam in (1e-2, 1e-3):
            exact = lz.lz_irr_work(p, lam_i, dlam, mode="exact")
            second = lz.lz_irr_work(p, lam_i, dlam, mode="second_order")
            disc[dlam] = abs(exact - second) / abs(exact)
        ratio = disc[1e-2] / disc[1e-3]
        failures = []
        if not 5.0 <= ratio <= 20.0:
            failures.append(f"error ratio {ratio:.2f} outside [5, 20]")
        elapsed = time.perf_counter() - t0
        if elapsed >= 1.0:
            failures.append(f"took {elapsed:.2f}s, budget 1s")
        return _result(
            "criterion 3: expansion error order",
            t0,
            failures,
            f"relative discrepancy ratio across one decade: {ratio:.2f}",
        )

    def criterion_4(self) -> CheckResult:
        """XXZ first-order transition: one pin-stable jump near lam/J = -2."""
        t0 = time.perf_counter()
        failures = []
        intervals = {}
        elapsed_total = 0.0
        for pin in (-1e-3, -1e-4):
            rows, elapsed = self.xxz_sweep(pin)
            elapsed_total += elapsed
            avg_jumps = detect_jumps(rows, "avg_work_per_delta")
            irr_jumps = detect_jumps(rows, "irr_per_delta2")
            intervals[pin] = (
                [j.interval for j in avg_jumps],
                [j.interval for j in irr_jumps],
            )
            for label, jumps in (("avg", avg_jumps), ("irr", irr_jumps)):
                if len(jumps) != 1:
                    failures.append(f"pin={pin} {label}: {len(jumps)} jumps, want 1")
                elif abs(jumps[0].location - (-2.0)) > 0.5:
                    failures.append(
                        f"pin={pin} {label}: jump at {jumps[0].location}, "
                        f"not within 0.5 of -2"
                    )
        if intervals[-1e-3] != intervals[-1e-4]:
            failures.append(
                f"jump intervals differ across pins: {intervals[-1e-3]} vs {intervals[-1e-4]}"
            )
        if elapsed_total >= 300.0:
            failures.append(f"sweeps took {elapsed_total:.0f}s, budget 300s")
        detail = (
            f"avg jump {intervals[-1e-3][0]}, irr jump {intervals[-1e-3][1]}, "
            f"pin-stable, {elapsed_total:.0f}s"
        )
        return _result("criterion 4: XXZ first-order transition", t0, failures, detail)

    def criterion_5(self) -> CheckResult:
        """Ferro phase: weak quenches are adiabatic (overlap 1, W_irr ~ 0)."""
        t0 = time.perf_counter()
        rows, _ = self.xxz_sweep(-1e-3)
        failures = []
        chain = ChainSpec(n_sites=12, jx=1.0, jy=1.0, pin_strength=-1e-3)
        basis = build_basis(12)
        n_checked = 0
        min_overlap = 1.0
        for r in rows:
            if r.grid_value >= -2.5:
                continue
            n_checked += 1
            if not r.irr_work <= ADIABATIC_TOL:
                failures.append(f"row {r.grid_value}: irr_work={r.irr_work}")
            gs_i = ground_state(build_hamiltonian(chain.quenched(LAMBDA_Z, r.grid_value), basis))
            gs_f = ground_state(
                build_hamiltonian(chain.quenched(LAMBDA_Z, r.grid_value + r.delta), basis),
                start=gs_i.ground_vector,
            )
            overlap = abs(float(gs_i.ground_vector @ gs_f.ground_vector))
            min_overlap = min(min_overlap, overlap)
            if overlap < 1.0 - ADIABATIC_TOL:
                failures.append(f"row {r.grid_value}: overlap={overlap}")
        if n_checked == 0:
            failures.append("no rows with grid value < -2.5")
        return _result(
            "criterion 5: ferromagnetic adiabaticity",
            t0,
            failures,
            f"{n_checked} rows, min overlap 1-{1 - min_overlap:.2e}, all irr <= 1e-12",
        )

    def criterion_6(self) -> CheckResult:
        """BKT null signal: no detected jump inside [1, 3]."""
        t0 = time.perf_counter()
        rows, _ = self.xxz_sweep(-1e-3)
        failures = []
        for column in ("avg_work_per_delta", "irr_per_delta2"):
            for j in detect_jumps(rows, column):
                lo, hi = sorted(j.interval)
                if hi >= 1.0 and lo <= 3.0:
                    failures.append(f"{column}: jump {j.interval} intersects [1, 3]")
        return _result(
            "criterion 6: BKT null signal",
            t0,
            failures,
            "no jump interval intersects [1, 3] in either work column",
        )

    def criterion_7(self) -> CheckResult:
        """XX criticality: W_irr/dh^2 peaks at h = 2J and grows with n."""
        t0 = time.perf_counter()
        failures = []
        peaks = {}
        elapsed_total = 0.0
        step = 0.01
        detail_parts = []
        for n in (128, 512, 2048):
            rows, elapsed = self.ff_sweep(n)
            elapsed_total += elapsed
            vals = np.array([r.irr_per_delta2 for r in rows])
            grid = np.array([r.grid_value for r in rows])
            imax = int(np.nanargmax(vals))
            peaks[n] = float(vals[imax])
            detail_parts.append(f"n={n}: max {vals[imax]:.1f} at h={grid[imax]:.2f}")
            if n == 512 and abs(grid[imax] - 2.0) > step + 1e-12:
                failures.append(
                    f"n=512 maximum at h={grid[imax]:.2f}, not within one grid "
                    f"step of 2 (near-2 value: {vals[np.argmin(np.abs(grid - 1.99))]:.1f})"
                )
        if not peaks[128] < peaks[512] < peaks[2048]:
            failures.append(
                f"grid peak not strictly increasing in n: "
                f"{peaks[128]:.1f}, {peaks[512]:.1f}, {peaks[2048]:.1f}"
            )
        if elapsed_total >= 30.0:
            failures.append(f"sweeps took {elapsed_total:.1f}s, budget 30s")
        return _result(
            "criterion 7: XX criticality at h=2J",
            t0,
            failures,
            "; ".join(detail_parts) + f"; {elapsed_total:.1f}s",
        )

    # -- oracle equivalence -------------------------------------------------

    def _ed_pipeline(self, n: int, h: float, dh: float):
        """Dense-ED quench pipeline for the XX chain in a field."""
        chain = ChainSpec(n_sites=n, jx=1.0, jy=1.0, lambda_z=0.0, field_h=h,
                          pin_strength=0.0)
        basis = build_basis(n)
        h_i = build_hamiltonian(chain, basis)
        v_op = build_potential(chain, FIELD_H, basis)
        # tol 1e-12 keeps the eigenstate admixture below the commuting
        # work-variance budget of 1e-18
        gs_i = ground_state(h_i, tol=1e-12)
        spectrum_f = full_spectrum(build_hamiltonian(chain.quenched(FIELD_H, h + dh), basis))
        dist = work_distribution(gs_i.ground_vector, spectrum_f, gs_i.ground_energy)
        delta_u = spectrum_f.ground_energy - gs_i.ground_energy
        mom = moments(dist, delta_u)
        avg_hf = average_work_hf(gs_i.ground_vector, v_op, dh)
        mag = float(gs_i.ground_vector @ (v_op.matrix @ gs_i.ground_vector))
        return gs_i.ground_energy, mag, mom, dist, avg_hf, delta_u

    def oracle_ed_vs_ff(self, sizes=(8, 10, 12), n_fields=21) -> list[str]:
        failures = []
        dh = 1e-3
        for n in sizes:
            for h in np.linspace(0.0, 3.0, n_fields):
                e0_ed, mag_ed, mom_ed, dist, avg_hf, delta_u = self._ed_pipeline(n, float(h), dh)
                self.instances.append((f"xx_ed n={n} h={h:.2f}", dist, delta_u, avg_hf))
                e0_ff = xx_ground_energy(n, 1.0, float(h))
                mag_ff = xx_magnetization(n, 1.0, float(h))
                mom_ff = xx_quench_moments(n, 1.0, float(h), dh)
                checks = [
                    ("E0", e0_ed, e0_ff),
                    ("mag", mag_ed, mag_ff),
                    ("avg", mom_ed.avg_work, mom_ff.avg_work),
                    ("dU", mom_ed.delta_u, mom_ff.delta_u),
                    ("irr", mom_ed.irr_work, mom_ff.irr_work),
                    ("var", mom_ed.variance, mom_ff.variance),
                ]
                for label, ed, ff in checks:
                    if abs(ed - ff) > ORACLE_ED_TOL:
                        failures.append(
                            f"n={n} h={h:.3f} {label}: ED {ed!r} vs FF {ff!r}"
                        )
        return failures

    def oracle_lz_embedded(self, n_points=50) -> list[str]:
        from .chain import SparseOperator

        failures = []
        rng = np.random.default_rng(0x5EED)
        for _ in range(n_points):
            p = lz.LzParams(
                delta=float(rng.uniform(0.5, 3.0)),
                a=float(rng.uniform(0.3, 2.0)) * (1 if rng.random() < 0.5 else -1),
                eps=float(rng.uniform(0.05, 1.5)),
            )
            lam_i = p.lambda_c + float(rng.uniform(-1.5, 1.5))
            dlam = float(rng.uniform(1e-4, 1e-2))
            op_i = SparseOperator.from_dense(lz.lz_hamiltonian(p, lam_i))
            op_f = SparseOperator.from_dense(lz.lz_hamiltonian(p, lam_i + dlam))
            spec_i = full_spectrum(op_i)
            spec_f = full_spectrum(op_f)
            dist_num = work_distribution(
                spec_i.ground_vector, spec_f, spec_i.ground_energy
            )
            dist_cf = lz.lz_work_distribution(p, lam_i, lam_i + dlam)
            delta_u = spec_f.ground_energy - spec_i.ground_energy
            self.instances.append(
                (f"lz eps={p.eps:.2f}", dist_num, delta_u,
                 lz.lz_average_work(p, lam_i, dlam))
            )
            pairs = [
                ("E0", spec_i.ground_energy, lz.lz_ground_energy(p, lam_i)),
                ("E0_f", spec_f.ground_energy, lz.lz_ground_energy(p, lam_i + dlam)),
                ("avg", dist_num.mean(), lz.lz_average_work(p, lam_i, dlam)),
                ("irr", dist_num.mean() - delta_u,
                 lz.lz_irr_work(p, lam_i, dlam, mode="exact")),
                ("var", dist_num.variance(), dist_cf.variance()),
            ]
            if len(dist_num.outcomes) != len(dist_cf.outcomes):
                failures.append(
                    f"{p}: outcome count {len(dist_num.outcomes)} vs "
                    f"{len(dist_cf.outcomes)}"
                )
                continue
            for (w_n, p_n), (w_c, p_c) in zip(dist_num.outcomes, dist_cf.outcomes):
                pairs.append(("dist_w", w_n, w_c))
                pairs.append(("dist_p", p_n, p_c))
            for label, num, cf in pairs:
                if abs(num - cf) > ORACLE_LZ_TOL:
                    failures.append(f"{p}: {label} numeric {num!r} vs closed {cf!r}")
        return failures

    def criterion_8(self) -> CheckResult:
        """Closed forms and free fermions against the dense-ED pipeline."""
        t0 = time.perf_counter()
        failures = self.oracle_ed_vs_ff() + self.oracle_lz_embedded()
        return _result(
            "criterion 8: oracle equivalence",
            t0,
            failures[:8],
            "ED/FF match to 1e-9 on 63 points; LZ closed forms to 1e-12 on 50 points",
        )

    def criterion_9(self) -> CheckResult:
        """Universal invariants on every instance the earlier criteria touched."""
        t0 = time.perf_counter()
        # make sure the standard artifacts exist even when run standalone
        self.lz_sweep()
        self.xxz_sweep(-1e-3)
        self.ff_sweep(512)
        if not any(lbl.startswith("xx_ed") for lbl, *_ in self.instances):
            self.oracle_ed_vs_ff(sizes=(8, 10), n_fields=11)
            self.oracle_lz_embedded(n_points=20)
        failures = []
        n_dists = 0
        for label, dist, delta_u, avg_hf in self.instances:
            n_dists += 1
            probs = dist.probs
            if abs(float(probs.sum()) - 1.0) > NORM_TOL:
                failures.append(f"{label}: sum p = {probs.sum()}")
            if np.any(probs < 0.0):
                failures.append(f"{label}: negative probability")
            if abs(dist.outcomes[0][0] - delta_u) > MIN_SUPPORT_TOL:
                failures.append(f"{label}: min support {dist.outcomes[0][0]} != dU {delta_u}")
            if abs(dist.mean() - avg_hf) > FIRST_MOMENT_TOL:
                failures.append(f"{label}: mean {dist.mean()} != HF {avg_hf}")
            if dist.mean() - delta_u < -CLAUSIUS_TOL:
                failures.append(f"{label}: Clausius violated, irr={dist.mean() - delta_u}")
            if label.startswith("xx_ed") and dist.variance() > COMMUTING_VAR_TOL:
                failures.append(f"{label}: commuting variance {dist.variance()}")
        n_rows = 0
        for label, rows in self.rows_collections:
            for r in rows:
                if not np.isfinite(r.irr_work):
                    continue
                n_rows += 1
                if r.irr_work < -CLAUSIUS_TOL:
                    failures.append(f"{label} row {r.grid_value}: irr={r.irr_work}")
                commuting = label.startswith("ff_") or (
                    label.startswith("xxz") and r.grid_value < -2.5
                )
                if commuting and r.variance > COMMUTING_VAR_TOL:
                    failures.append(f"{label} row {r.grid_value}: var={r.variance}")
        return _result(
            "criterion 9: universal invariants",
            t0,
            failures[:8],
            f"{n_dists} distributions and {n_rows} sweep rows clean",
        )

    def full(self) -> list[CheckResult]:
        return [
            self.criterion_1(),
            self.criterion_2(),
            self.criterion_3(),
            self.criterion_4(),
            self.criterion_5(),
            self.criterion_6(),
            self.criterion_7(),
            self.criterion_8(),
            self.criterion_9(),
        ]


def quick_checks(workers: int = 2) -> list[CheckResult]:
    """Closed-form oracles plus n <= 8 cross-checks; runs in seconds."""
    suite = AcceptanceSuite(workers=workers)
    results = [suite.criterion_1(), suite.criterion_2(), suite.criterion_3()]

    t0 = time.perf_counter()
    # 11 fields step 0.3: avoids every n=8 single-particle crossing
    failures = suite.oracle_ed_vs_ff(sizes=(8,), n_fields=11)
    failures += suite.oracle_lz_embedded(n_points=10)
    results.append(
        _result("quick oracle equivalence (n=8)", t0, failures,
                "ED/FF and LZ embeddings agree")
    )

    t0 = time.perf_counter()
    failures = []
    chain = ChainSpec(n_sites=8, jx=1.0, jy=1.0, lambda_z=0.7, field_h=0.3,
                      pin_strength=-1e-3)
    full_basis = build_basis(8)
    e_full = full_spectrum(build_hamiltonian(chain, full_basis)).ground_energy
    e_sectors = min(
        ground_state(build_hamiltonian(chain, build_basis(8, sector=s))).ground_energy
        for s in range(-8, 9, 2)
    )
    if abs(e_full - e_sectors) > 1e-12:
        failures.append(f"sector-blocked E0 {e_sectors} vs full {e_full}")
    results.append(
        _result("quick sector consistency (n=8)", t0, failures,
                f"blocked and full ground energies agree to {abs(e_full - e_sectors):.1e}")
    )
    return results


def full_checks(workers: int = 2) -> list[CheckResult]:
    return AcceptanceSuite(workers=workers).full()
