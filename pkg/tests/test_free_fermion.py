"""Jordan-Wigner XX solver against exact diagonalization and analytics."""

import numpy as np
import pytest
import scipy.linalg

from quenchlab import (
    ChainSpec,
    FreeFermionChain,
    ZeroModeError,
    average_work_hf,
    build_basis,
    build_hamiltonian,
    build_potential,
    full_spectrum,
    ground_state,
    moments,
    work_distribution,
    xx_crossing_fields,
    xx_ground_energy,
    xx_magnetization,
    xx_mode_energies,
    xx_quench_moments,
)
from quenchlab.work_stats import FIELD_H

# a 21-point grid on [0, 3] misses every even-n finite-size crossing
H_GRID = np.linspace(0.0, 3.0, 21)


def _xx_spec(n, h, boundary="open"):
    return ChainSpec(n_sites=n, jx=1.0, jy=1.0, field_h=h, pin_strength=0.0,
                     boundary=boundary)


def _ed_ground(n, h, boundary="open"):
    op = build_hamiltonian(_xx_spec(n, h, boundary), build_basis(n))
    return ground_state(op)


def test_modes_are_tridiagonal_eigenvalues():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n = int(rng.integers(2, 40))
        j = float(rng.uniform(0.3, 2.0))
        h = float(rng.uniform(-1.0, 3.0))
        direct = scipy.linalg.eigvalsh_tridiagonal(
            np.full(n, 2.0 * h), np.full(n - 1, 2.0 * j)
        )
        np.testing.assert_allclose(xx_mode_energies(n, j, h), direct, atol=1e-12)


def test_two_site_modes():
    np.testing.assert_allclose(xx_mode_energies(2, 1.0, 0.0), [-2.0, 2.0], atol=1e-15)


def test_band_empty_above_2j():
    for n in (5, 32, 301):
        assert np.all(xx_mode_energies(n, 1.0, 2.0 + 1e-9) > 0.0)
        assert np.all(xx_mode_energies(n, 1.0, 10.0) > 0.0)


def test_global_field_shift_moves_every_mode_by_twice_it():
    # spin-to-fermion factor: h sz maps to 2h per fermion mode
    base = xx_mode_energies(24, 1.0, 0.7)
    for shift in (0.25, -1.5):
        np.testing.assert_allclose(
            xx_mode_energies(24, 1.0, 0.7 + shift), base + 2.0 * shift, atol=1e-12
        )


def test_filled_sea_matches_ed():
    for n in (2, 4, 6, 8, 10):
        for h in H_GRID:
            e_ed = full_spectrum(
                build_hamiltonian(_xx_spec(n, float(h)), build_basis(n))
            ).ground_energy
            assert xx_ground_energy(n, 1.0, float(h)) == pytest.approx(e_ed, abs=1e-9)
    # n=12 through the iterative path
    for h in H_GRID[::4]:
        e_ed = _ed_ground(12, float(h)).ground_energy
        assert xx_ground_energy(12, 1.0, float(h)) == pytest.approx(e_ed, abs=1e-9)


def test_polarized_limit():
    assert xx_ground_energy(64, 1.0, 10.0) == -640.0
    assert xx_magnetization(64, 1.0, 10.0) == -64.0
    assert xx_magnetization(64, 1.0, 0.0) == 0.0


def test_magnetization_matches_ed():
    n = 12
    basis = build_basis(n)
    for h in (0.45, 1.0, 1.65, 2.55):
        spec = _xx_spec(n, h)
        gs = ground_state(build_hamiltonian(spec, basis))
        v = build_potential(spec, FIELD_H, basis)
        mag_ed = float(gs.ground_vector @ (v.matrix @ gs.ground_vector))
        assert xx_magnetization(n, 1.0, h) == pytest.approx(mag_ed, abs=1e-9)


def test_magnetization_is_field_derivative_of_energy():
    # E0 is piecewise linear in h; differentiate away from crossings
    step = 1e-6
    for n, h in ((12, 1.0), (64, 0.8), (301, 2.5)):
        fd = (xx_ground_energy(n, 1.0, h + step) - xx_ground_energy(n, 1.0, h - step)) / (
            2.0 * step
        )
        assert fd == pytest.approx(xx_magnetization(n, 1.0, h), abs=1e-6)


def test_zero_mode_error():
    # n=8 has a crossing exactly at h = 2 cos(pi/3) = 1
    with pytest.raises(ZeroModeError):
        xx_magnetization(8, 1.0, 1.0)
    with pytest.raises(ZeroModeError):
        xx_quench_moments(8, 1.0, 1.0, 1e-3)


def test_crossing_fields_are_zero_modes():
    n = 16
    for h in xx_crossing_fields(n, 1.0):
        modes = xx_mode_energies(n, 1.0, float(h))
        assert np.min(np.abs(modes)) < 1e-12


def test_quench_moments_polarized_sector():
    m = xx_quench_moments(512, 1.0, 10.0, 1e-3)
    assert m.avg_work == pytest.approx(-0.512, rel=1e-12)
    assert abs(m.irr_work) <= 1e-12
    assert m.variance == 0.0 and m.commuting_flag


def test_quench_moments_match_ed_pipeline_at_n12():
    n, h, dh = 12, 1.7, 1e-3
    basis = build_basis(n)
    spec = _xx_spec(n, h)
    # tol 1e-12: the eigenstate admixture ~tol/gap must stay below the
    # commuting-variance budget of 1e-18
    gs_i = ground_state(build_hamiltonian(spec, basis), tol=1e-12)
    spectrum_f = full_spectrum(build_hamiltonian(_xx_spec(n, h + dh), basis))
    dist = work_distribution(gs_i.ground_vector, spectrum_f, gs_i.ground_energy)
    delta_u = spectrum_f.ground_energy - gs_i.ground_energy
    ed = moments(dist, delta_u)
    ff = xx_quench_moments(n, 1.0, h, dh)
    assert ff.avg_work == pytest.approx(ed.avg_work, abs=1e-9)
    assert ff.delta_u == pytest.approx(ed.delta_u, abs=1e-9)
    assert ff.irr_work == pytest.approx(ed.irr_work, abs=1e-9)
    assert ff.variance == pytest.approx(ed.variance, abs=1e-9)
    assert ed.variance <= 1e-18  # commuting quench


def test_quench_window_containing_a_crossing_dissipates():
    # n=10 crossing at 2 cos(2 pi/11) ~ 1.6825; straddle it with the window
    n = 10
    crossing = 2.0 * np.cos(2.0 * np.pi / 11.0)
    h_i, dh = crossing - 4e-4, 1e-3
    ff = xx_quench_moments(n, 1.0, h_i, dh)
    assert ff.irr_work > 1e-4  # refilling cost of the crossed mode

    basis = build_basis(n)
    gs_i = ground_state(build_hamiltonian(_xx_spec(n, h_i), basis))
    spectrum_f = full_spectrum(build_hamiltonian(_xx_spec(n, h_i + dh), basis))
    dist = work_distribution(gs_i.ground_vector, spectrum_f, gs_i.ground_energy)
    ed = moments(dist, spectrum_f.ground_energy - gs_i.ground_energy)
    assert ff.avg_work == pytest.approx(ed.avg_work, abs=1e-9)
    assert ff.irr_work == pytest.approx(ed.irr_work, abs=1e-9)


def test_clausius_everywhere():
    rng = np.random.default_rng(19)
    for _ in range(300):
        n = int(rng.integers(2, 200))
        h = float(rng.uniform(-0.5, 3.5))
        dh = float(rng.uniform(-0.05, 0.05)) or 1e-3
        try:
            m = xx_quench_moments(n, 1.0, h, dh)
        except ZeroModeError:
            continue
        assert m.irr_work >= -1e-12


def test_periodic_parity_sectors_match_ed():
    for n in (4, 6, 8):
        for h in (0.25, 0.8, 1.3, 2.6):
            e_ed = full_spectrum(
                build_hamiltonian(_xx_spec(n, h, boundary="periodic"), build_basis(n))
            ).ground_energy
            e_ff = xx_ground_energy(n, 1.0, h, boundary="periodic")
            assert e_ff == pytest.approx(e_ed, abs=1e-9), (n, h)


def test_periodic_magnetization_matches_ed():
    n = 8
    basis = build_basis(n)
    for h in (0.25, 0.8, 1.3, 2.6):
        spec = _xx_spec(n, h, boundary="periodic")
        gs = ground_state(build_hamiltonian(spec, basis))
        v = build_potential(spec, FIELD_H, basis)
        mag_ed = float(gs.ground_vector @ (v.matrix @ gs.ground_vector))
        assert xx_magnetization(n, 1.0, h, boundary="periodic") == pytest.approx(
            mag_ed, abs=1e-9
        )


def test_chain_record_carries_modes():
    chain = FreeFermionChain.build(12, 1.0, 0.5)
    assert chain.mode_energies.size == 12
    assert chain.ground_energy() == xx_ground_energy(12, 1.0, 0.5)
    assert chain.quench_moments(1e-3).avg_work == pytest.approx(
        1e-3 * chain.magnetization(), rel=1e-12
    )


def test_near_critical_peak_grows_with_size():
    # W_irr/dh^2 near the band edge: kinks densify as n grows
    dh = 1e-3
    grid = np.linspace(1.9, 2.1, 21)
    peaks = []
    for n in (128, 512, 2048):
        vals = [xx_quench_moments(n, 1.0, float(h), dh).irr_work / dh**2 for h in grid]
        peaks.append(max(vals))
    assert peaks[0] < peaks[1] < peaks[2]


def test_window_matched_quench_peaks_at_band_edge():
    # with the quench window equal to the grid cell, every finite-size kink
    # is counted exactly once: the susceptibility-like column then peaks at
    # the last cell below h = 2J and grows with n at every size
    from quenchlab import GridSpec, SweepPlan, run_sweep

    grid = GridSpec(0.0, 3.0, 301)
    dh = grid.step
    peaks = []
    for n in (128, 512, 2048):
        plan = SweepPlan(model="xx_ff", grid=grid, delta=dh, param=FIELD_H, ff_n=n)
        rows = run_sweep(plan)
        vals = np.array([r.irr_per_delta2 for r in rows])
        imax = int(np.nanargmax(vals))
        assert abs(rows[imax].grid_value - 2.0) <= 1.5 * dh, (n, rows[imax].grid_value)
        peaks.append(vals[imax])
    assert peaks[0] < peaks[1] < peaks[2]
