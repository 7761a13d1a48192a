"""Exception hierarchy shared by all depthkit modules.

Every exception carries an ``exit_code`` so the CLI can map failures to
distinct process exit statuses (2 parse, 3 precondition, 4 numeric/solver,
5 no-linear-tail).
"""

from __future__ import annotations


class DepthkitError(Exception):
    """Base class for all depthkit errors."""

    exit_code = 1


class InputFormatError(DepthkitError):
    """Malformed input: CSV parse failures, bad flags, bad numbers."""

    exit_code = 2


class PreconditionError(DepthkitError):
    """A documented operation precondition was violated."""

    exit_code = 3


class EmptyRegionError(PreconditionError):
    """Requested depth level exceeds the depth of the trace center."""


class NumericError(DepthkitError):
    """Numerical failure: singular systems, degenerate scales, solver faults."""

    exit_code = 4


class SolverError(NumericError):
    """The LP solver could not produce a trustworthy answer."""


class DegenerateScaleError(NumericError):
    """A robust scale estimate (MAD) vanished where positivity is required."""


class SingularCovarianceError(NumericError):
    """Sample covariance too ill-conditioned for Mahalanobis depth."""


class ConvergenceError(NumericError):
    """Iterative optimizer hit its cap; carries the best iterate found."""

    def __init__(self, message: str, best_point=None, best_value: float | None = None):
        super().__init__(message)
        self.best_point = best_point
        self.best_value = best_value


class MonotonicityError(NumericError):
    """A ray profile increased beyond tolerance; usually an approximation
    budget that is too small for the requested diagnostic."""


class NoLinearTailError(DepthkitError):
    """No suffix of a ray profile fits a line within tolerance."""

    exit_code = 5
