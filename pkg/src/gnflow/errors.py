"""Exception types raised by the solvers."""


class GNFlowError(Exception):
    """Base class for solver errors."""


class IllPosed(GNFlowError):
    """Elliptic coefficients or surface height lost positivity."""


class SolverFailure(GNFlowError):
    """A linear solve did not meet its residual check."""


class MonotonicityLoss(GNFlowError):
    """The flow map stopped being a diffeomorphism (min phi_x <= guard)."""


class StepRejected(GNFlowError):
    """A time step produced non-finite values or the step budget ran out."""


class ConfigError(GNFlowError):
    """Invalid scenario configuration."""
