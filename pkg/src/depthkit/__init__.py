"""depthkit: multivariate statistical depth functions and contour tools.

Six depth notions (Mahalanobis, projection, halfspace, zonoid, and the
extended halfspace/zonoid variants that stay positive outside the convex
hull of the data), their depth-maximizing centers, radial contour tracing,
and an empirical verifier for the similarity structure of depth contours.
"""

from .core import Dataset, Direction, Point, RngSeed, random_directions, validate_general_position
from .depth import (
    DepthMethod,
    DepthResult,
    DepthTag,
    extended_halfspace_depth,
    extended_zonoid_depth,
    halfspace_depth,
    mahalanobis_depth,
    outlyingness,
    projection_depth,
    zonoid_depth,
)
from .errors import (
    ConvergenceError,
    DegenerateScaleError,
    DepthkitError,
    EmptyRegionError,
    InputFormatError,
    MonotonicityError,
    NoLinearTailError,
    NumericError,
    PreconditionError,
    SingularCovarianceError,
    SolverError,
)
from .median import MedianResult, halfspace_median, projection_median, sample_mean

# NOTE: univariate.median stays namespaced (depthkit.univariate.median) to
# avoid shadowing the depthkit.median submodule.
from .univariate import Sample1D, mad, outlyingness_1d

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "Direction",
    "Point",
    "RngSeed",
    "random_directions",
    "validate_general_position",
    "DepthMethod",
    "DepthResult",
    "DepthTag",
    "mahalanobis_depth",
    "outlyingness",
    "projection_depth",
    "halfspace_depth",
    "zonoid_depth",
    "extended_halfspace_depth",
    "extended_zonoid_depth",
    "MedianResult",
    "sample_mean",
    "projection_median",
    "halfspace_median",
    "Sample1D",
    "mad",
    "outlyingness_1d",
    "DepthkitError",
    "InputFormatError",
    "PreconditionError",
    "EmptyRegionError",
    "NumericError",
    "SolverError",
    "DegenerateScaleError",
    "SingularCovarianceError",
    "ConvergenceError",
    "MonotonicityError",
    "NoLinearTailError",
]
