"""Exception types shared across the package."""


class RigidaError(ValueError):
    """Base class for invalid input or violated preconditions."""


class DimensionError(RigidaError):
    pass


class SingularMatrixError(RigidaError):
    pass


class NotALieLawError(RigidaError):
    """Raised when a table fails the Jacobi identity where a Lie law is required."""

    def __init__(self, message, defect=()):
        super().__init__(message)
        self.defect = list(defect)


class NotClosedError(RigidaError):
    """A set of matrices is not closed under the commutator."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class HypothesisError(RigidaError):
    """An operation's mathematical hypothesis does not hold for the input."""


class IrrationalSpectrumError(RigidaError):
    """A characteristic polynomial does not split over the rationals."""
