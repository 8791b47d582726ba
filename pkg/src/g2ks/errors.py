"""Exception hierarchy shared across the package.

Precondition violations map to CLI exit code 2, invariant breaches to 3.
"""


class PreconditionError(ValueError):
    """Caller violated a documented precondition (bad input, bad range)."""


class PoleError(PreconditionError):
    """Evaluation of a rational function at a pole of its denominator."""


class SingularMatrixError(PreconditionError):
    """A linear system is rank-deficient, or a matrix is singular as a function."""


class InconsistentSystemError(PreconditionError):
    """An overdetermined linear system has no solution."""


class UnderdeterminedError(SingularMatrixError):
    """The stacked intertwining relations do not pin down every matrix entry."""


class InvariantError(RuntimeError):
    """An internal invariant failed; indicates a bug, not a usage error."""
