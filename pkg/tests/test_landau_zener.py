"""Closed-form two-level model: exact values, derivatives, work statistics."""

import numpy as np
import pytest

from quenchlab import (
    DegeneratePointError,
    LzParams,
    ValidationError,
    lz_average_work,
    lz_d2energy,
    lz_denergy,
    lz_ground_energy,
    lz_hamiltonian,
    lz_irr_work,
    lz_latent_jump,
    lz_work_distribution,
)


def test_params_validation():
    with pytest.raises(ValidationError):
        LzParams(delta=2.0, a=0.0, eps=0.1)
    with pytest.raises(ValidationError):
        LzParams(delta=2.0, a=1.0, eps=-0.1)
    assert LzParams(delta=2.0, a=1.0, eps=0.0).lambda_c == 1.0


def test_ground_energy_closed_form():
    p = LzParams(delta=2.0, a=1.0, eps=0.0)
    assert lz_ground_energy(p, 0.0) == -1.0
    assert lz_ground_energy(p, 1.0) == 0.0
    assert lz_ground_energy(LzParams(2.0, 1.0, 0.5), 1.0) == -0.5


def test_ground_energy_negative_and_symmetric():
    rng = np.random.default_rng(7)
    for _ in range(200):
        p = LzParams(
            delta=rng.uniform(-3, 3), a=rng.uniform(0.2, 2), eps=rng.uniform(0, 2)
        )
        s = rng.uniform(0, 2)
        assert lz_ground_energy(p, p.lambda_c) <= 0.0
        left = lz_ground_energy(p, p.lambda_c - s)
        right = lz_ground_energy(p, p.lambda_c + s)
        assert left == pytest.approx(right, abs=1e-12)


def test_denergy_signs_and_bound():
    p = LzParams(delta=2.0, a=1.0, eps=0.0)
    assert lz_denergy(p, 0.5) == 1.0
    assert lz_denergy(p, 1.5) == -1.0
    assert lz_denergy(LzParams(2.0, 1.0, 1.0), 1.0) == 0.0
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = LzParams(delta=rng.uniform(-2, 2), a=rng.uniform(-2, 2) or 1.0,
                     eps=rng.uniform(0.01, 2))
        lam = rng.uniform(-3, 3)
        assert abs(lz_denergy(p, lam)) <= abs(p.a) + 1e-12


def test_d2energy_values():
    assert lz_d2energy(LzParams(2.0, 1.0, 0.1), 1.0) == pytest.approx(-10.0, rel=1e-14)
    assert lz_d2energy(LzParams(2.0, 1.0, 1.0), 1.0) == pytest.approx(-1.0, rel=1e-14)
    # eps^2 prefactor: identically zero away from the crossing when eps=0
    p0 = LzParams(delta=2.0, a=1.0, eps=0.0)
    assert lz_d2energy(p0, 0.3) == 0.0
    assert lz_d2energy(p0, 1.7) == 0.0


def test_derivatives_match_finite_differences():
    rng = np.random.default_rng(11)
    for _ in range(60):
        p = LzParams(delta=rng.uniform(-2, 2), a=rng.uniform(0.3, 2),
                     eps=rng.uniform(0.05, 2))
        lam = rng.uniform(-2, 2)
        step = 1e-6
        e = [lz_ground_energy(p, lam + k * step) for k in (-1, 1)]
        fd1 = (e[1] - e[0]) / (2 * step)
        assert fd1 == pytest.approx(lz_denergy(p, lam), rel=1e-6, abs=1e-9)
        # second differences need a larger step to clear the rounding floor
        step = 1e-4
        e = [lz_ground_energy(p, lam + k * step) for k in (-1, 0, 1)]
        fd2 = (e[2] - 2 * e[1] + e[0]) / step**2
        assert fd2 == pytest.approx(lz_d2energy(p, lam), rel=1e-5, abs=1e-6)


def test_degenerate_point_errors():
    p = LzParams(delta=2.0, a=1.0, eps=0.0)
    for op in (lz_denergy, lz_d2energy):
        with pytest.raises(DegeneratePointError):
            op(p, 1.0)
    with pytest.raises(DegeneratePointError):
        lz_average_work(p, 1.0, 1e-5)
    with pytest.raises(DegeneratePointError):
        lz_work_distribution(p, 1.0, 1.1)
    # fine with an avoided crossing
    assert lz_denergy(LzParams(2.0, 1.0, 0.5), 1.0) == 0.0


def test_average_work_per_quench():
    p = LzParams(delta=2.0, a=1.0, eps=0.0)
    assert lz_average_work(p, 0.5, 1e-5) == pytest.approx(1e-5, rel=1e-12)
    assert lz_average_work(p, 1.5, 1e-5) == pytest.approx(-1e-5, rel=1e-12)
    assert lz_average_work(LzParams(1.0, 0.7, 0.3), 0.4, 0.0) == 0.0


def test_latent_jump():
    assert lz_latent_jump(LzParams(2.0, 1.0, 0.0)) == 2.0
    assert lz_latent_jump(LzParams(2.0, 3.0, 0.0)) == 6.0
    with pytest.raises(ValidationError):
        lz_latent_jump(LzParams(2.0, 1.0, 0.1))


def test_latent_jump_equals_slope_limits():
    p = LzParams(delta=2.0, a=1.3, eps=0.0)
    dlam = 1e-9
    left = lz_average_work(p, p.lambda_c - 1e-6, dlam) / dlam
    right = lz_average_work(p, p.lambda_c + 1e-6, dlam) / dlam
    assert left - right == lz_latent_jump(p)


def test_work_distribution_eps0_single_outcome():
    # eigenvectors are lambda-independent for eps=0: no excitation
    p = LzParams(delta=2.0, a=1.0, eps=0.0)
    dist = lz_work_distribution(p, 0.5, 0.6)
    assert len(dist.outcomes) == 1
    w, prob = dist.outcomes[0]
    assert prob == 1.0
    assert w == pytest.approx(0.1, rel=1e-12)  # dlam * a on the ferro side
    assert dist.variance() == 0.0


def test_work_distribution_identity_quench():
    dist = lz_work_distribution(LzParams(2.0, 1.0, 0.3), 0.4, 0.4)
    assert dist.outcomes == ((0.0, 1.0),)


def test_work_distribution_matches_2x2_diagonalization():
    # independent oracle: numpy eigendecomposition of the explicit matrices
    rng = np.random.default_rng(23)
    for _ in range(50):
        p = LzParams(delta=rng.uniform(0.5, 3), a=rng.uniform(0.3, 2),
                     eps=rng.uniform(0.05, 1.5))
        lam_i = p.lambda_c + rng.uniform(-1.5, 1.5)
        lam_f = lam_i + rng.uniform(-0.2, 0.2) or lam_i + 0.01
        ei, vi = np.linalg.eigh(lz_hamiltonian(p, lam_i))
        ef, vf = np.linalg.eigh(lz_hamiltonian(p, lam_f))
        probs = (vf.T @ vi[:, 0]) ** 2
        works = ef - ei[0]
        dist = lz_work_distribution(p, lam_i, lam_f)
        got_w = [w for w, _ in dist.outcomes]
        got_p = [q for _, q in dist.outcomes]
        np.testing.assert_allclose(got_w, np.sort(works), atol=1e-12)
        np.testing.assert_allclose(got_p, probs[np.argsort(works)], atol=1e-12)


def test_work_distribution_excitation_probability_small_quench():
    # p_1 ~ (dlam a / 2 eps)^2 for a weak quench at the avoided crossing
    p = LzParams(delta=2.0, a=1.0, eps=0.1)
    dist = lz_work_distribution(p, 1.0, 1.01)
    assert len(dist.outcomes) == 2
    p1 = dist.outcomes[1][1]
    assert p1 == pytest.approx((0.01 * 1.0 / (2 * 0.1)) ** 2, rel=0.05)


def test_first_moment_identity():
    rng = np.random.default_rng(5)
    for _ in range(50):
        p = LzParams(delta=rng.uniform(0.5, 3), a=rng.uniform(0.3, 2),
                     eps=rng.uniform(0.05, 1.5))
        lam_i = p.lambda_c + rng.uniform(-1, 1)
        dlam = rng.uniform(1e-4, 1e-2)
        dist = lz_work_distribution(p, lam_i, lam_i + dlam)
        assert dist.mean() == pytest.approx(lz_average_work(p, lam_i, dlam), abs=1e-12)


def test_irr_work_eq8_values():
    assert lz_irr_work(LzParams(2.0, 1.0, 0.1), 1.0, 0.01, "second_order") == (
        pytest.approx(5e-4, rel=1e-12)
    )
    assert lz_irr_work(LzParams(2.0, 1.0, 0.05), 1.0, 0.01, "second_order") == (
        pytest.approx(1e-3, rel=1e-12)
    )


def test_irr_work_exact_adiabatic_for_level_crossing():
    # same side of the crossing, eps=0: eigenvectors fixed, no dissipation
    p = LzParams(delta=2.0, a=1.0, eps=0.0)
    assert abs(lz_irr_work(p, 0.3, 0.1, "exact")) <= 1e-15
    assert abs(lz_irr_work(p, 1.4, 0.05, "exact")) <= 1e-15


def test_irr_work_clausius():
    rng = np.random.default_rng(17)
    for _ in range(200):
        p = LzParams(delta=rng.uniform(-2, 2), a=rng.uniform(0.3, 2),
                     eps=rng.uniform(0.0, 2))
        lam_i = rng.uniform(-2, 2)
        if p.eps == 0.0 and abs(lam_i - p.lambda_c) < 1e-9:
            continue
        dlam = rng.uniform(-0.2, 0.2) or 1e-3
        assert lz_irr_work(p, lam_i, dlam, "exact") >= -1e-15


def test_irr_work_second_order_eps_guard():
    with pytest.raises(ValidationError):
        lz_irr_work(LzParams(2.0, 1.0, 0.0), 0.5, 0.01, "second_order")
    with pytest.raises(ValidationError):
        lz_irr_work(LzParams(2.0, 1.0, 0.5), 0.5, 0.01, "bogus")


def test_eq2_error_scales_linearly_in_dlam():
    p = LzParams(delta=2.0, a=1.0, eps=0.5)
    lam_i = 0.75
    disc = {}
    for dlam in (1e-2, 1e-3, 1e-4):
        exact = lz_irr_work(p, lam_i, dlam, "exact")
        second = lz_irr_work(p, lam_i, dlam, "second_order")
        disc[dlam] = abs(exact - second) / exact
    assert 5 < disc[1e-2] / disc[1e-3] < 20
    assert 5 < disc[1e-3] / disc[1e-4] < 20
