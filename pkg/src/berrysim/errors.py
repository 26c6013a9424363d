"""Exception types shared across the package."""


class BerrysimError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(BerrysimError, ValueError):
    """A model or operator constructor received out-of-domain arguments."""


class InvalidInputError(BerrysimError, ValueError):
    """An operation received inputs violating its preconditions."""


class CyclicityError(BerrysimError):
    """Trajectory is not cyclic enough for a cyclic phase decomposition.

    Carries the measured return fidelity |<psi(0)|psi(T)>|.
    """

    def __init__(self, return_fidelity):
        self.return_fidelity = return_fidelity
        super().__init__(
            f"trajectory not cyclic: return fidelity {return_fidelity:.6g}"
        )


class StiffnessError(BerrysimError):
    """Integrator step size underflowed; reports the failing time."""

    def __init__(self, t_fail, message=""):
        self.t_fail = t_fail
        super().__init__(
            f"integration stalled near t = {t_fail:.6g}" + (f": {message}" if message else "")
        )


class EdgeBranchError(BerrysimError):
    """Requested eigenbranch does not exist at an edge index."""


class TrackingError(BerrysimError):
    """Eigenvalue crossing broke continuity tracking of a density matrix."""


class UndefinedPhaseError(BerrysimError):
    """The mixed geometric phase is undefined (zero-magnitude complex sum)."""


class LabelingError(BerrysimError):
    """A supposed conserved label fails to commute with the Hamiltonian."""
