"""Exceptions and warnings raised by the numerical models."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the function."""


class GridError(ValueError):
    """A time grid is invalid, a time is off-grid, or a lattice does not match the requested window."""


class InsufficientPathsError(GridError):
    """The lattice carries fewer Brownian paths than the estimator consumes."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap or failed its certification residual."""


class WindowMissError(RuntimeError):
    """An optimizer landed on the boundary of the search grid."""


class HorizonWarning(UserWarning):
    """The truncation horizon of a (-inf, t] integral leaves non-negligible mass near its far end."""
