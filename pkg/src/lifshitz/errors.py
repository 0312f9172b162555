"""Exception and warning types shared by every module."""


class LifshitzError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LifshitzError, ValueError):
    """Arguments lie outside every region where a route is implemented."""


class PoleError(DomainError):
    """A parameter sits on a pole (e.g. a non-positive integer Gamma argument)."""


class NoConvergence(LifshitzError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance.

    ``partial`` holds the best estimate available when the work was abandoned.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class QuadratureError(NoConvergence):
    """Adaptive quadrature could not certify the requested accuracy."""


class PrecisionLoss(UserWarning):
    """Cancellation has destroyed more digits than the tolerance allows."""
