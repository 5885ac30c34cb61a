"""quenchlab: sudden-quench work statistics for quantum critical spin models.

Closed-form two-level (Landau-Zener) thermodynamics, exact diagonalization
of XYZ-family spin chains, a Jordan-Wigner free-fermion solver for the XX
chain, and a deterministic sweep engine that maps work and irreversible
work across phase diagrams.
"""

from .chain import (
    ChainSpec,
    SparseOperator,
    SpinBasis,
    build_basis,
    build_hamiltonian,
    build_potential,
)
from .eigensolver import EigenResult, full_spectrum, ground_state
from .errors import (
    ConvergenceError,
    DegeneratePointError,
    QuenchLabError,
    SchemaError,
    ValidationError,
    ZeroModeError,
)
from .free_fermion import (
    FreeFermionChain,
    xx_crossing_fields,
    xx_ground_energy,
    xx_magnetization,
    xx_mode_energies,
    xx_quench_moments,
)
from .landau_zener import (
    LzParams,
    lz_average_work,
    lz_d2energy,
    lz_denergy,
    lz_ground_energy,
    lz_hamiltonian,
    lz_irr_work,
    lz_latent_jump,
    lz_work_distribution,
)
from .sweep import (
    CSV_HEADER,
    GridSpec,
    Jump,
    SweepPlan,
    SweepRow,
    build_grid,
    detect_jumps,
    read_csv,
    run_sweep,
    write_csv,
)
from .work_stats import (
    FIELD_H,
    LAMBDA_Z,
    QuenchSpec,
    WorkDistribution,
    WorkMoments,
    average_work_hf,
    irr_second_order_check,
    moments,
    work_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "SparseOperator",
    "SpinBasis",
    "build_basis",
    "build_hamiltonian",
    "build_potential",
    "EigenResult",
    "full_spectrum",
    "ground_state",
    "QuenchLabError",
    "ValidationError",
    "DegeneratePointError",
    "ZeroModeError",
    "ConvergenceError",
    "SchemaError",
    "FreeFermionChain",
    "xx_mode_energies",
    "xx_ground_energy",
    "xx_magnetization",
    "xx_quench_moments",
    "xx_crossing_fields",
    "LzParams",
    "lz_hamiltonian",
    "lz_ground_energy",
    "lz_denergy",
    "lz_d2energy",
    "lz_average_work",
    "lz_latent_jump",
    "lz_work_distribution",
    "lz_irr_work",
    "GridSpec",
    "SweepPlan",
    "SweepRow",
    "Jump",
    "build_grid",
    "run_sweep",
    "detect_jumps",
    "write_csv",
    "read_csv",
    "CSV_HEADER",
    "QuenchSpec",
    "WorkDistribution",
    "WorkMoments",
    "work_distribution",
    "average_work_hf",
    "moments",
    "irr_second_order_check",
    "LAMBDA_Z",
    "FIELD_H",
]
