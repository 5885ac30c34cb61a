"""Typed exceptions shared across quenchlab modules."""


class QuenchLabError(Exception):
    """Base class for all quenchlab errors."""


class ValidationError(QuenchLabError, ValueError):
    """Invalid input: violated type invariant, guard, or precondition."""


class DegeneratePointError(QuenchLabError):
    """The requested quantity is undefined at a ground-state degeneracy.

    Raised e.g. for the two-level model exactly at the level crossing
    (eps = 0, lambda = lambda_c), where the ground state and the energy
    derivatives are not defined.
    """


class ZeroModeError(QuenchLabError):
    """A free-fermion single-particle mode sits at zero energy.

    The Fermi-sea filling (and hence the magnetization) is ambiguous at
    such finite-size level crossings; grids are expected to be nudged
    off these points.
    """


class ConvergenceError(QuenchLabError):
    """Iterative eigensolver failed to reach the requested residual."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class SchemaError(QuenchLabError):
    """A sweep CSV file does not conform to the expected schema."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
