"""Sparse spin-1/2 chain Hamiltonians for the XYZ family.

    H = sum_<i,j> [ Jx sx_i sx_j + Jy sy_i sy_j + (lambda/2) sz_i sz_j ]
        + h sum_i sz_i + pin * sz_{pin_site}

with Pauli matrices s^a, nearest-neighbour bonds (open or periodic), a
uniform field applied once per site, and a small local pinning field that
lifts the ferromagnetic ground-state degeneracy.

Basis convention shared by every module: site i maps to bit i of the basis
state integer, spin up = bit 1 = sz eigenvalue +1.  With Jx = Jy the total
magnetization sum_i sz_i is conserved and the basis may be restricted to a
single sector.

Matrix elements in the computational basis: the zz, field, and pin terms
are diagonal; Jx sxsx + Jy sysy flips a bond's two spins with amplitude
(Jx + Jy) on anti-aligned pairs and (Jx - Jy) on aligned pairs (the latter
changes the magnetization by +-2 and must vanish under sector restriction).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb

import numpy as np
import scipy.sparse as sparse

from .errors import ValidationError
from .work_stats import FIELD_H, LAMBDA_Z

#: dense full-spectrum work is limited to this many sites (2^14 states)
DENSE_MAX_SITES = 14
#: iterative ground-state work is limited to this many sites
SPARSE_MAX_SITES = 24


@dataclass(frozen=True)
class ChainSpec:
    """Open or periodic XYZ chain instance (couplings, field, pinning)."""

    n_sites: int
    jx: float = 1.0
    jy: float = 1.0
    lambda_z: float = 0.0
    field_h: float = 0.0
    pin_strength: float = -1e-3
    pin_site: int = 0
    boundary: str = "open"

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValidationError(f"n_sites must be >= 2, got {self.n_sites}")
        if self.n_sites > SPARSE_MAX_SITES:
            raise ValidationError(
                f"n_sites={self.n_sites} exceeds the guard of {SPARSE_MAX_SITES}"
            )
        if not 0 <= self.pin_site < self.n_sites:
            raise ValidationError(f"pin_site {self.pin_site} out of range")
        if self.boundary not in ("open", "periodic"):
            raise ValidationError(f"boundary must be open|periodic, got {self.boundary!r}")
        if self.boundary == "periodic" and self.n_sites < 3:
            raise ValidationError("periodic boundary needs n_sites >= 3")

    def bonds(self) -> list[tuple[int, int]]:
        pairs = [(i, i + 1) for i in range(self.n_sites - 1)]
        if self.boundary == "periodic":
            pairs.append((self.n_sites - 1, 0))
        return pairs

    def quenched(self, param: str, value: float) -> "ChainSpec":
        """Copy of this spec with the quench parameter replaced."""
        if param == LAMBDA_Z:
            return replace(self, lambda_z=value)
        if param == FIELD_H:
            return replace(self, field_h=value)
        raise ValidationError(f"unknown quench parameter {param!r}")

    def parameter(self, param: str) -> float:
        if param == LAMBDA_Z:
            return self.lambda_z
        if param == FIELD_H:
            return self.field_h
        raise ValidationError(f"unknown quench parameter {param!r}")


@dataclass(frozen=True)
class SpinBasis:
    """Ordered computational basis, optionally restricted to one sz sector."""

    n_sites: int
    sector: int | None
    states: np.ndarray  # strictly increasing bit-encoded configurations

    @property
    def size(self) -> int:
        return self.states.size

    def index_of(self, states) -> np.ndarray:
        """Positions of bit-encoded configurations in this basis."""
        idx = np.searchsorted(self.states, states)
        if np.any(idx >= self.size) or np.any(self.states[idx] != states):
            raise ValidationError("configuration outside this basis")
        return idx

    def sz_values(self) -> np.ndarray:
        """(size, n_sites) array of sz = +-1 per site, following bit order."""
        bits = (self.states[:, None] >> np.arange(self.n_sites)) & 1
        return 2.0 * bits - 1.0


def build_basis(n_sites: int, sector: int | None = None) -> SpinBasis:
    """Full 2^n basis, or the binomial(n, n_up) states of one sz sector."""
    if n_sites < 1 or n_sites > SPARSE_MAX_SITES:
        raise ValidationError(f"n_sites={n_sites} outside the supported range")
    if sector is None:
        states = np.arange(1 << n_sites, dtype=np.int64)
        return SpinBasis(n_sites=n_sites, sector=None, states=states)

    if abs(sector) > n_sites or (sector + n_sites) % 2 != 0:
        raise ValidationError(
            f"empty sector: total sz={sector} impossible for {n_sites} sites"
        )
    n_up = (sector + n_sites) // 2
    all_states = np.arange(1 << n_sites, dtype=np.int64)
    bits = (all_states[:, None] >> np.arange(n_sites)) & 1
    states = all_states[bits.sum(axis=1) == n_up]
    assert states.size == comb(n_sites, n_up)
    return SpinBasis(n_sites=n_sites, sector=sector, states=states)


@dataclass(frozen=True)
class SparseOperator:
    """Real symmetric operator in CSR form over a fixed basis."""

    dim: int
    matrix: sparse.csr_matrix

    @classmethod
    def from_coo(cls, dim, rows, cols, vals) -> "SparseOperator":
        m = sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
        m.sum_duplicates()
        return cls(dim=dim, matrix=m)

    @classmethod
    def from_dense(cls, arr) -> "SparseOperator":
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError("from_dense expects a square matrix")
        return cls(dim=arr.shape[0], matrix=sparse.csr_matrix(arr))

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def entries(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinate triplets (rows, cols, values)."""
        coo = self.matrix.tocoo()
        return coo.row, coo.col, coo.data

    def hermiticity_defect(self) -> float:
        d = self.matrix - self.matrix.T
        return 0.0 if d.nnz == 0 else float(np.max(np.abs(d.data)))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if self.dim != other.dim:
            raise ValidationError("dimension mismatch")
        return SparseOperator(dim=self.dim, matrix=(self.matrix + other.matrix).tocsr())

    def scaled(self, t: float) -> "SparseOperator":
        return SparseOperator(dim=self.dim, matrix=(self.matrix * t).tocsr())


def _check_sector_couplings(spec: ChainSpec, basis: SpinBasis) -> None:
    if basis.sector is not None and spec.jx != spec.jy:
        raise ValidationError(
            "sector restriction requires jx == jy "
            "(sxsx + sysy conserves total sz, unequal couplings do not)"
        )
    if basis.n_sites != spec.n_sites:
        raise ValidationError("basis and spec disagree on n_sites")


def build_hamiltonian(spec: ChainSpec, basis: SpinBasis) -> SparseOperator:
    """Assemble H for the given spec over the given basis."""
    _check_sector_couplings(spec, basis)
    states = basis.states
    sz = basis.sz_values()

    diag = spec.field_h * sz.sum(axis=1) + spec.pin_strength * sz[:, spec.pin_site]
    rows = [np.arange(basis.size)]
    cols = [np.arange(basis.size)]
    vals: list[np.ndarray] = []

    flip_anti = spec.jx + spec.jy  # amplitude on anti-aligned bonds
    flip_align = spec.jx - spec.jy  # amplitude on aligned bonds (changes sector)

    off_rows, off_cols, off_vals = [], [], []
    for i, j in spec.bonds():
        zz = sz[:, i] * sz[:, j]
        diag = diag + (0.5 * spec.lambda_z) * zz
        mask_anti = zz < 0
        if flip_anti != 0.0 and mask_anti.any():
            src = states[mask_anti]
            dst = src ^ ((1 << i) | (1 << j))
            off_rows.append(np.flatnonzero(mask_anti))
            off_cols.append(basis.index_of(dst))
            off_vals.append(np.full(src.size, flip_anti))
        mask_align = ~mask_anti
        if flip_align != 0.0 and mask_align.any():
            src = states[mask_align]
            dst = src ^ ((1 << i) | (1 << j))
            off_rows.append(np.flatnonzero(mask_align))
            off_cols.append(basis.index_of(dst))
            off_vals.append(np.full(src.size, flip_align))

    vals.append(diag)
    if off_rows:
        rows += off_rows
        cols += off_cols
        vals += off_vals
    return SparseOperator.from_coo(
        basis.size, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    )


def build_potential(spec: ChainSpec, param: str, basis: SpinBasis) -> SparseOperator:
    """Quench generator V = dH/dparam: (1/2) sum_bonds szsz or sum_i sz.

    Both generators are diagonal, so H(param + t) = H(param) + t V holds
    entrywise for all t.
    """
    _check_sector_couplings(spec, basis)
    sz = basis.sz_values()
    if param == LAMBDA_Z:
        diag = np.zeros(basis.size)
        for i, j in spec.bonds():
            diag += 0.5 * (sz[:, i] * sz[:, j])
    elif param == FIELD_H:
        diag = sz.sum(axis=1)
    else:
        raise ValidationError(f"unknown quench parameter {param!r}")
    idx = np.arange(basis.size)
    return SparseOperator.from_coo(basis.size, idx, idx, diag)
