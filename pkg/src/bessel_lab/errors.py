"""Exception types shared across the package."""


class BesselLabError(Exception):
    """Base class for all package errors."""


class ConfigError(BesselLabError):
    """Invalid configuration or CLI arguments (exit status 2)."""


class NumericalError(BesselLabError):
    """Numerical failure: divergent quadrature, stalled solver, violated
    constraint (exit status 3)."""


class QuadratureConvergenceError(NumericalError):
    """Refinement stalled before reaching the requested tolerance."""


class SolverConvergenceError(NumericalError):
    """Iterative solver did not meet its residual contract in budget."""
