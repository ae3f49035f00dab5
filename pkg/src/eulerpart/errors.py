"""Exception types shared across the package."""


class EulerPartError(Exception):
    """Base class for all package-specific errors."""


class InvariantViolation(EulerPartError):
    """An exact structural identity failed.

    These identities are integer equalities with no tolerance; a violation
    means either a malformed input slipped past validation or a genuine bug.
    """


class ResolutionError(EulerPartError):
    """A sample landed on (or numerically too close to) the zero set."""

    def __init__(self, message, n=None, n_bad=None):
        super().__init__(message)
        self.n = n
        self.n_bad = n_bad


class InstabilityError(EulerPartError):
    """Grid refinement did not reach agreement within the allowed levels."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = history or []


class SymmetryError(EulerPartError):
    """Function does not satisfy the required symmetry or boundary condition."""


class CutError(EulerPartError):
    """Proposed cut path violates an admissibility condition."""


class NormalizationError(EulerPartError):
    """Normalization cannot proceed at the current refinement factor."""
