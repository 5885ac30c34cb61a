"""Two-point-measurement work statistics for sudden quenches.

For a system prepared in the ground state |psi0> of H(lam_i) and suddenly
quenched to H(lam_f), the work outcomes are W_m = E_m(lam_f) - E_0(lam_i)
with probabilities p_m = |<psi0|phi_m>|^2 over the final eigenbasis.  This
module turns eigendata into the discrete work distribution and its moments:

    <W>      = sum_m p_m W_m = dlam * <psi0|V|psi0>     (Hellmann-Feynman)
    dU       = E_0(lam_f) - E_0(lam_i)
    <W_irr>  = <W> - dU   >= 0 at zero temperature (Clausius)

The second-order expansion <W_irr> ~ -(dlam^2/2) d2E0/dlam2 is exposed only
as a diagnostic; the irreversible work itself is always computed exactly as
<W> - dU.

States and spectra are passed in; this module owns no solver policy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

# Quench generator identifiers, shared with the chain builders.
LAMBDA_Z = "lambda_z"
FIELD_H = "field_h"

#: outcomes closer than this in W are merged into one (degenerate levels)
W_MERGE_TOL = 1e-12
#: outcomes below this probability are dropped (except the lowest-W anchor)
ZERO_PROB_TOL = 1e-30
#: a work variance at or below this marks a commuting quench
COMMUTING_VARIANCE_TOL = 1e-18

_NORM_TOL = 1e-12
_MIN_SUPPORT_TOL = 1e-10


@dataclass(frozen=True)
class QuenchSpec:
    """Which Hamiltonian parameter is quenched, from where, by how much."""

    param: str  # LAMBDA_Z or FIELD_H
    value_i: float
    delta: float

    def __post_init__(self):
        if self.param not in (LAMBDA_Z, FIELD_H):
            raise ValidationError(f"unknown quench parameter {self.param!r}")

    @property
    def value_f(self) -> float:
        return self.value_i + self.delta


@dataclass(frozen=True)
class WorkDistribution:
    """Discrete work distribution {(W_m, p_m)}, ascending in W_m.

    Outcomes within W_MERGE_TOL in energy are merged (P(W) is a function
    of W, not of eigenindex).  Outcomes with numerically zero probability
    are dropped, except the lowest-W outcome which anchors the support at
    W_min = dU.
    """

    outcomes: tuple[tuple[float, float], ...]

    @classmethod
    def from_samples(cls, works, probs) -> "WorkDistribution":
        works = np.asarray(works, dtype=float)
        probs = np.asarray(probs, dtype=float)
        if works.shape != probs.shape or works.ndim != 1 or works.size == 0:
            raise ValidationError("works and probs must be equal-length 1d arrays")
        if np.any(probs < -_NORM_TOL):
            raise ValidationError("negative outcome probability")
        total = float(probs.sum())
        if abs(total - 1.0) > _NORM_TOL:
            raise ValidationError(f"probabilities sum to {total}, not 1")

        order = np.argsort(works, kind="stable")
        works = works[order]
        probs = np.clip(probs[order], 0.0, None)

        merged: list[list[float]] = []
        for w, p in zip(works, probs):
            if merged and w - merged[-1][0] <= W_MERGE_TOL:
                # probability-weighted position keeps the merged W stable
                w_prev, p_prev = merged[-1]
                p_new = p_prev + p
                if p_new > 0.0:
                    merged[-1][0] = (w_prev * p_prev + w * p) / p_new
                merged[-1][1] = p_new
            else:
                merged.append([w, p])

        kept = [(w, p) for i, (w, p) in enumerate(merged)
                if i == 0 or p > ZERO_PROB_TOL]
        return cls(outcomes=tuple((float(w), float(p)) for w, p in kept))

    @property
    def works(self) -> np.ndarray:
        return np.array([w for w, _ in self.outcomes])

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for _, p in self.outcomes])

    def mean(self) -> float:
        return float(np.dot(self.works, self.probs))

    def variance(self) -> float:
        w, p = self.works, self.probs
        m = np.dot(w, p)
        return float(np.dot(p, (w - m) ** 2))


@dataclass(frozen=True)
class WorkMoments:
    """Scalar moments of one quench: <W>, dU, <W_irr>, Var(W)."""

    avg_work: float
    delta_u: float
    irr_work: float
    variance: float
    commuting_flag: bool

    @classmethod
    def from_avg_du(cls, avg_work, delta_u, variance) -> "WorkMoments":
        return cls(
            avg_work=float(avg_work),
            delta_u=float(delta_u),
            irr_work=float(avg_work) - float(delta_u),
            variance=float(variance),
            commuting_flag=variance <= COMMUTING_VARIANCE_TOL,
        )


def work_distribution(psi0, final_spectrum, e0_i) -> WorkDistribution:
    """Work distribution from the initial state and the full final spectrum.

    ``final_spectrum`` is an EigenResult holding the complete orthonormal
    eigendecomposition of H(lam_f); ``e0_i`` is the initial ground energy.
    """
    psi0 = np.asarray(psi0, dtype=float)
    energies = np.asarray(final_spectrum.energies, dtype=float)
    vectors = np.asarray(final_spectrum.vectors, dtype=float)
    dim = psi0.shape[0]
    if vectors.shape != (dim, energies.size):
        raise ValidationError("final spectrum does not match the state dimension")
    if energies.size != dim:
        raise ValidationError(
            f"incomplete final spectrum: {energies.size} of {dim} eigenpairs"
        )
    norm = float(np.linalg.norm(psi0))
    if abs(norm - 1.0) > _NORM_TOL:
        raise ValidationError(f"initial state norm {norm} is not 1")

    probs = (vectors.T @ psi0) ** 2
    works = energies - float(e0_i)
    dist = WorkDistribution.from_samples(works, probs)

    delta_u = float(energies[0]) - float(e0_i)
    if abs(dist.outcomes[0][0] - delta_u) > _MIN_SUPPORT_TOL:
        raise ValidationError(
            f"minimum work outcome {dist.outcomes[0][0]} does not sit at dU={delta_u}"
        )
    return dist


def average_work_hf(psi0, v_op, delta) -> float:
    """Average work dlam * <psi0|V|psi0> (exact for sudden quenches)."""
    psi0 = np.asarray(psi0, dtype=float)
    if v_op.dim != psi0.shape[0]:
        raise ValidationError(
            f"operator dim {v_op.dim} does not match state dim {psi0.shape[0]}"
        )
    return float(delta) * float(psi0 @ (v_op.matrix @ psi0))


def moments(dist: WorkDistribution, delta_u) -> WorkMoments:
    """Moments of a work distribution given the internal-energy change."""
    return WorkMoments.from_avg_du(dist.mean(), delta_u, dist.variance())


def irr_second_order_check(e0_grid, delta, irr_exact) -> float:
    """Relative discrepancy between exact W_irr and its second-order form.

    ``e0_grid`` holds the three ground energies at lam_i - delta, lam_i,
    lam_i + delta.  The second-order estimate is -(delta^2/2) times the
    central second difference; the return value is the discrepancy divided
    by max(|irr_exact|, 1e-300).  Diagnostic only, never used to compute
    the irreversible work itself.
    """
    e_lo, e_mid, e_hi = (float(e) for e in e0_grid)
    d2 = (e_lo - 2.0 * e_mid + e_hi) / float(delta) ** 2
    approx = -0.5 * float(delta) ** 2 * d2
    return abs(float(irr_exact) - approx) / max(abs(float(irr_exact)), 1e-300)
