"""Error taxonomy shared across the package.

Every failure mode that integrations and transforms can hit maps to one of
these exception types, so callers (and the command line front end) can react
by kind instead of parsing messages.
"""


class JacobiFlowError(Exception):
    """Base class for all package errors."""


class DomainViolation(JacobiFlowError):
    """A chart point fell outside the metric's guarded domain."""


class SingularMatrix(JacobiFlowError):
    """A metric (or other matrix) failed the conditioning check for inversion."""


class TurningPoint(JacobiFlowError):
    """The conformal factor degenerated: the energy hit the potential."""


class StepFailure(JacobiFlowError):
    """The adaptive integrator's step size underflowed.

    Carries the partial trajectory accumulated before the failure in the
    ``trajectory`` attribute (``None`` if nothing was integrated).
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class EmptyTrajectory(JacobiFlowError):
    """A trajectory with fewer than two states was passed to a comparator."""


class PoleAtZeroDenominator(JacobiFlowError):
    """A closed-form expression was evaluated exactly at its pole."""
