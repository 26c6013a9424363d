"""Geometric-phase bookkeeping for a driven qubit coupled to spin or
oscillator fields.

The package builds rotating-drive Hamiltonians whose two-level blocks are
exactly solvable, integrates the Schrodinger equation in a co-rotating
interaction picture, and splits cyclic phases into dynamic and geometric
parts.  Closed forms for the geometric phase, the phase-space action, the
concurrence, and the mixed-state interferometric phase ship alongside the
numerics so every quantity can be checked both ways.
"""

from .errors import (
    BerrysimError,
    CyclicityError,
    EdgeBranchError,
    InvalidInputError,
    InvalidParameterError,
    LabelingError,
    StiffnessError,
    TrackingError,
    UndefinedPhaseError,
)
from .evolution import Trajectory, evolve, instantaneous_fidelity
from .models import (
    HamiltonianSet,
    HybridModel,
    OscillatorModel,
    build_classical,
    build_hybrid,
    build_oscillator,
    min_fock_truncation,
)
from .nonsep import (
    NonsepReport,
    ProbeResult,
    action,
    action_closed,
    complementarity_report,
    concurrence,
    delta_e_curve,
    energy_uncertainty,
    uncertainty_relation_probe,
)
from .operators import (
    boson_operators,
    circular_distance,
    displacement,
    gauge_fix,
    reduced_density_matrix,
    spin_matrices,
    tensor,
    wrap_angle,
)
from .phases import (
    ClosedPhase,
    NoncyclicCurve,
    PhaseReport,
    berry_closed,
    cyclic_phase_decomposition,
    mean_energy_curve,
    mixed_geometric_closed,
    mixed_geometric_kinematic,
    noncyclic_phase_curve,
)
from .spectra import (
    EigenBranch,
    all_branches,
    branch_alpha,
    hybrid_block_angle,
    hybrid_eigensystem,
    numeric_eigensystem,
    oscillator_eigensystem,
)

__version__ = "0.1.0"

__all__ = [
    "BerrysimError",
    "CyclicityError",
    "EdgeBranchError",
    "InvalidInputError",
    "InvalidParameterError",
    "LabelingError",
    "StiffnessError",
    "TrackingError",
    "UndefinedPhaseError",
    "Trajectory",
    "evolve",
    "instantaneous_fidelity",
    "HamiltonianSet",
    "HybridModel",
    "OscillatorModel",
    "build_classical",
    "build_hybrid",
    "build_oscillator",
    "min_fock_truncation",
    "NonsepReport",
    "ProbeResult",
    "action",
    "action_closed",
    "complementarity_report",
    "concurrence",
    "delta_e_curve",
    "energy_uncertainty",
    "uncertainty_relation_probe",
    "boson_operators",
    "circular_distance",
    "displacement",
    "gauge_fix",
    "reduced_density_matrix",
    "spin_matrices",
    "tensor",
    "wrap_angle",
    "ClosedPhase",
    "NoncyclicCurve",
    "PhaseReport",
    "berry_closed",
    "cyclic_phase_decomposition",
    "mean_energy_curve",
    "mixed_geometric_closed",
    "mixed_geometric_kinematic",
    "noncyclic_phase_curve",
    "EigenBranch",
    "all_branches",
    "branch_alpha",
    "hybrid_block_angle",
    "hybrid_eigensystem",
    "numeric_eigensystem",
    "oscillator_eigensystem",
    "__version__",
]
