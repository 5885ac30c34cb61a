"""Ground-state and full-spectrum solvers for SparseOperator.

Small or dense problems go through LAPACK (scipy.linalg.eigh); large sparse
ground states use Lanczos iteration with full reorthogonalization and a
seeded start vector, so repeated runs are bit-identical.  A Krylov build is
capped at 500 vectors; if the requested residual is not reached the
iteration restarts from the current Ritz vector, which keeps memory bounded
while small-gap problems (e.g. near a first-order crossing) still converge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .chain import SparseOperator
from .errors import ConvergenceError, ValidationError

DEFAULT_SEED = 0x5EED
DEFAULT_TOL = 1e-10
#: a gap below this marks a (near-)degenerate ground state
DEGENERACY_TOL = 1e-10
#: Krylov vectors per restart cycle
LANCZOS_MAX_ITER = 500
MAX_RESTARTS = 40
#: dimensions at or below this are solved densely even in ground_state
_SMALL_DENSE_DIM = 64
#: full_spectrum guard: 2^14 states
_DENSE_DIM_MAX = 1 << 14


@dataclass(frozen=True)
class EigenResult:
    """Ascending eigenvalues with orthonormal eigenvectors as columns."""

    energies: np.ndarray
    vectors: np.ndarray
    gap: float | None
    degenerate: bool = False
    iterations: int = 0

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def ground_vector(self) -> np.ndarray:
        return self.vectors[:, 0]


def _fix_gauge(vectors: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry positive (sign convention)."""
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def full_spectrum(op: SparseOperator) -> EigenResult:
    """Complete orthonormal eigendecomposition (dense path)."""
    if op.dim > _DENSE_DIM_MAX:
        raise ValidationError(
            f"dense spectrum limited to dim <= {_DENSE_DIM_MAX}, got {op.dim}"
        )
    energies, vectors = scipy.linalg.eigh(op.to_dense())
    vectors = _fix_gauge(vectors)
    gap = float(energies[1] - energies[0]) if op.dim > 1 else None
    return EigenResult(
        energies=energies,
        vectors=vectors,
        gap=gap,
        degenerate=gap is not None and gap < DEGENERACY_TOL,
    )


def _lanczos_cycle(op, q0, tol, rng, max_iter):
    """One full-reorthogonalization Krylov build from start vector q0.

    Returns (theta, ground vector, explicit residual, iterations done).
    """
    k_max = min(max_iter, op.dim)
    basis = np.empty((min(k_max, 64), op.dim))
    alphas = np.empty(k_max)
    betas = np.empty(k_max)

    basis[0] = q0
    theta = ritz = None
    j = 0
    while j < k_max:
        if j + 1 >= basis.shape[0] and j + 1 < k_max:
            grown = np.empty((min(2 * basis.shape[0], k_max), op.dim))
            grown[: basis.shape[0]] = basis
            basis = grown
        w = op.matvec(basis[j])
        alphas[j] = basis[j] @ w
        w -= alphas[j] * basis[j]
        if j > 0:
            w -= betas[j - 1] * basis[j - 1]
        # full reorthogonalization, twice for float robustness
        span = basis[: j + 1]
        w -= span.T @ (span @ w)
        w -= span.T @ (span @ w)
        beta = float(np.linalg.norm(w))

        theta, ritz = scipy.linalg.eigh_tridiagonal(alphas[: j + 1], betas[:j])
        scale = max(1.0, abs(theta[0]))
        resid_est = beta * abs(ritz[j, 0])
        injected = False
        if resid_est <= tol * scale or beta <= 1e-14 * scale:
            vec = span.T @ ritz[:, 0]
            vec /= np.linalg.norm(vec)
            resid = float(np.linalg.norm(op.matvec(vec) - theta[0] * vec))
            if resid <= tol * scale or j + 1 == k_max:
                return theta, vec, resid, j + 1
            if beta <= 1e-14 * scale:
                # invariant subspace without convergence: fresh direction,
                # decoupled from the exhausted block (zero coupling in T)
                w = rng.standard_normal(op.dim)
                w -= span.T @ (span @ w)
                beta = float(np.linalg.norm(w))
                injected = True
        if j + 1 == k_max:
            break
        basis[j + 1] = w / beta
        betas[j] = 0.0 if injected else beta
        j += 1

    vec = basis[: j + 1].T @ ritz[:, 0]
    vec /= np.linalg.norm(vec)
    resid = float(np.linalg.norm(op.matvec(vec) - theta[0] * vec))
    return theta, vec, resid, j + 1


def ground_state(
    op: SparseOperator,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    start: np.ndarray | None = None,
    max_iter: int = LANCZOS_MAX_ITER,
) -> EigenResult:
    """Lowest eigenpair to residual ||Hv - Ev|| <= tol * max(1, |E|).

    Deterministic for a fixed seed; ``start`` (need not be normalized)
    overrides the seeded random start vector.  A provided start is blended
    with a tiny seeded admixture so its overlap with the true ground state
    is never exactly zero (a bare Krylov space cannot leave an invariant
    subspace).  Raises ConvergenceError with the achieved residual if the
    restart budget is exhausted.
    """
    if op.dim < 1:
        raise ValidationError("empty operator")
    if op.dim <= _SMALL_DENSE_DIM:
        dense = full_spectrum(op)
        return EigenResult(
            energies=dense.energies[:1],
            vectors=dense.vectors[:, :1],
            gap=dense.gap,
            degenerate=dense.degenerate,
        )

    rng = np.random.default_rng(seed)
    if start is not None:
        q = np.asarray(start, dtype=float).copy()
        nrm = np.linalg.norm(q)
        if nrm == 0.0:
            raise ValidationError("start vector must be nonzero")
        noise = rng.standard_normal(op.dim)
        q = q / nrm + 1e-8 * noise / np.linalg.norm(noise)
    else:
        q = rng.standard_normal(op.dim)
    q /= np.linalg.norm(q)

    total_iters = 0
    theta = vec = None
    resid = np.inf
    for _ in range(MAX_RESTARTS):
        theta, vec, resid, iters = _lanczos_cycle(op, q, tol, rng, max_iter)
        total_iters += iters
        if resid <= tol * max(1.0, abs(theta[0])):
            break
        q = vec  # restart from the current Ritz approximation
    else:
        raise ConvergenceError(
            f"Lanczos did not reach tol={tol} after {total_iters} iterations "
            f"({MAX_RESTARTS} restarts, residual {resid:.3e})",
            residual=resid,
            iterations=total_iters,
        )

    vec = _fix_gauge(vec[:, None])[:, 0]
    gap = float(theta[1] - theta[0]) if theta.size > 1 else None
    return EigenResult(
        energies=np.array([theta[0]]),
        vectors=vec[:, None],
        gap=gap,
        degenerate=gap is not None and gap < DEGENERACY_TOL,
        iterations=total_iters,
    )
