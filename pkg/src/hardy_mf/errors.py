"""Exception hierarchy shared by all modules."""


class HardyMFError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HardyMFError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularArgumentError(DomainError):
    """The operation is evaluated exactly at a singularity (e.g. G(x, x))."""


class ToleranceNotMetError(HardyMFError, ArithmeticError):
    """An adaptive procedure exhausted its budget before reaching tolerance."""


class IntegrationError(HardyMFError, ArithmeticError):
    """The radial integrator could not continue.

    Attributes
    ----------
    last_r : float
        Last radius at which the state was accepted.
    """

    def __init__(self, message, last_r=float("nan")):
        super().__init__(message)
        self.last_r = last_r


class ConditioningError(HardyMFError, ArithmeticError):
    """The boundary frame matrix is numerically singular."""


class NoSignChangeError(HardyMFError, ValueError):
    """The shooting residual does not change sign on the supplied bracket."""


class InsufficientPointsError(HardyMFError, ValueError):
    """Too few branch points for the requested fit."""


class BranchFailureError(HardyMFError, RuntimeError):
    """More than the allowed fraction of branch points failed to converge."""
