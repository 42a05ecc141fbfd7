"""Exception hierarchy shared by every layer of the toolkit."""


class ChannegError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(ChannegError, ValueError):
    """A matrix has the wrong shape for the requested operation."""


class PreconditionError(ChannegError, ValueError):
    """An input violates a numerical precondition (e.g. Hermiticity)."""


class DomainError(ChannegError, ValueError):
    """A parameter or state lies outside the domain where an operation is defined."""


class RankError(ChannegError, ValueError):
    """A linear system that must be nonsingular is singular."""


class ValidationError(ChannegError, ValueError):
    """A user supplied object (matrix, file, unitary) failed validation."""


class ConfigurationError(ChannegError, ValueError):
    """A sweep grid or command configuration is incomplete or inconsistent."""


class ConvergenceError(ChannegError, ArithmeticError):
    """An iterative routine hit its sweep cap before converging."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual
