"""Closed-form quench thermodynamics of the two-level (Landau-Zener) model.

    H(lam) = (-delta/2 + a*lam) sigma_z + eps sigma_x

The ground energy is E0(lam) = -(1/2) sqrt(4 eps^2 + (delta - 2 a lam)^2).
For eps = 0 the two levels cross at lam_c = delta/(2a) and the average work
per quench jumps by 2a across the crossing (the first-order scenario); for
eps > 0 the avoided crossing drives the irreversible work up to
dlam^2 a^2 / (2 eps) at lam_c, diverging as eps -> 0 (the second-order
scenario).

All operations are pure functions evaluated in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError, ValidationError
from .work_stats import WorkDistribution

#: a point within this distance of lam_c counts as the exact crossing
DEGENERACY_WINDOW = 1e-12
#: second-order irreversible work is conditioned by 1/eps; keep it finite
SECOND_ORDER_EPS_MIN = 1e-8


@dataclass(frozen=True)
class LzParams:
    """Two-level model parameters: splitting delta, field coupling a, gap eps."""

    delta: float
    a: float
    eps: float

    def __post_init__(self):
        if self.a == 0.0:
            raise ValidationError("a must be nonzero (lambda_c = delta/(2a) undefined)")
        if self.eps < 0.0:
            raise ValidationError(f"eps must be >= 0, got {self.eps}")

    @property
    def lambda_c(self) -> float:
        return self.delta / (2.0 * self.a)


def _bias(p: LzParams, lam: float) -> float:
    """Diagonal bias m(lam) = a*lam - delta/2, so H = m sigma_z + eps sigma_x."""
    return p.a * lam - 0.5 * p.delta


def _check_nondegenerate(p: LzParams, lam: float) -> None:
    if p.eps == 0.0 and abs(lam - p.lambda_c) <= DEGENERACY_WINDOW * max(
        1.0, abs(p.lambda_c)
    ):
        raise DegeneratePointError(
            f"level crossing at lam_c={p.lambda_c}: ground state degenerate "
            f"for eps=0, lam={lam}"
        )


def lz_hamiltonian(p: LzParams, lam: float) -> np.ndarray:
    """The 2x2 Hamiltonian matrix in the sigma_z basis."""
    m = _bias(p, lam)
    return np.array([[m, p.eps], [p.eps, -m]])


def lz_ground_energy(p: LzParams, lam: float) -> float:
    """E0(lam) = -(1/2) sqrt(4 eps^2 + (delta - 2 a lam)^2)."""
    u = p.delta - 2.0 * p.a * lam
    return -0.5 * np.hypot(2.0 * p.eps, u)


def lz_denergy(p: LzParams, lam: float) -> float:
    """dE0/dlam = a (delta - 2 a lam) / sqrt(4 eps^2 + (delta - 2 a lam)^2)."""
    _check_nondegenerate(p, lam)
    u = p.delta - 2.0 * p.a * lam
    return p.a * u / np.hypot(2.0 * p.eps, u)


def lz_d2energy(p: LzParams, lam: float) -> float:
    """d2E0/dlam2 = -8 a^2 eps^2 / (4 eps^2 + (delta - 2 a lam)^2)^(3/2)."""
    _check_nondegenerate(p, lam)
    u = p.delta - 2.0 * p.a * lam
    r = np.hypot(2.0 * p.eps, u)
    return -8.0 * p.a**2 * p.eps**2 / r**3


def lz_average_work(p: LzParams, lam_i: float, dlam: float) -> float:
    """<W> = dlam * dE0/dlam at lam_i (exact for a sudden quench)."""
    return dlam * lz_denergy(p, lam_i)


def lz_latent_jump(p: LzParams) -> float:
    """Discontinuity of <W>/dlam across lam_c for the level crossing: 2a.

    Reported as (left limit - right limit), positive for a > 0.  Only the
    eps = 0 level-crossing scenario carries a discontinuity.
    """
    if p.eps != 0.0:
        raise ValidationError(
            f"latent jump requires eps=0 (level crossing); got eps={p.eps}"
        )
    return 2.0 * p.a


def _ground_angle(p: LzParams, lam: float) -> float:
    """Bloch angle phi with H = r (cos phi sigma_z + sin phi sigma_x)."""
    return np.arctan2(p.eps, _bias(p, lam))


def lz_work_distribution(p: LzParams, lam_i: float, lam_f: float) -> WorkDistribution:
    """Exact two-outcome work distribution of the 2x2 quench.

    The final eigenstates make Bloch angle phi_f; the excitation
    probability is sin^2((phi_f - phi_i)/2), exactly zero when the
    eigenvectors do not rotate (eps = 0 on one side of the crossing).
    """
    _check_nondegenerate(p, lam_i)
    e0_i = lz_ground_energy(p, lam_i)
    e0_f = lz_ground_energy(p, lam_f)
    half = 0.5 * (_ground_angle(p, lam_f) - _ground_angle(p, lam_i))
    p1 = np.sin(half) ** 2
    p0 = 1.0 - p1
    works = np.array([e0_f - e0_i, -e0_f - e0_i])
    probs = np.array([p0, p1])
    return WorkDistribution.from_samples(works, probs)


def lz_irr_work(p: LzParams, lam_i: float, dlam: float, mode: str = "exact") -> float:
    """Irreversible work of the quench lam_i -> lam_i + dlam.

    mode="exact":        <W> - dU, always >= 0 up to rounding.
    mode="second_order": -(dlam^2/2) d2E0/dlam2 at lam_i (requires
                         eps >= 1e-8: the value scales as 1/eps at lam_c).
    """
    if mode == "exact":
        avg = lz_average_work(p, lam_i, dlam)
        du = lz_ground_energy(p, lam_i + dlam) - lz_ground_energy(p, lam_i)
        return avg - du
    if mode == "second_order":
        if p.eps < SECOND_ORDER_EPS_MIN:
            raise ValidationError(
                f"second_order mode requires eps >= {SECOND_ORDER_EPS_MIN} "
                f"(1/eps conditioning); got eps={p.eps}"
            )
        return -0.5 * dlam**2 * lz_d2energy(p, lam_i)
    raise ValidationError(f"unknown mode {mode!r}; use 'exact' or 'second_order'")
