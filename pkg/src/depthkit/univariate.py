"""Order statistics, exact Med/MAD, and the one-dimensional outlyingness.

The median is pinned to the average of the two middle order statistics
(indices floor((n+1)/2) and floor((n+2)/2), 1-based); no interpolation
variants are offered, so results are bit-stable for oracle equivalence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegenerateScaleError, PreconditionError

__all__ = ["Sample1D", "median", "mad", "outlyingness_1d"]


@dataclass(frozen=True)
class Sample1D:
    """A nonempty sample of finite reals."""

    values: tuple[float, ...]

    def __init__(self, values: Iterable[float]):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise PreconditionError("Sample1D must be nonempty")
        if not all(math.isfinite(v) for v in vals):
            raise PreconditionError("Sample1D rejects NaN/inf values")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def _as_sample(sample) -> np.ndarray:
    if isinstance(sample, Sample1D):
        return sample.as_array()
    return Sample1D(sample).as_array()


def median_of_sorted(z: np.ndarray) -> float:
    """Median of an already-sorted 1-D array via the exact two-order-statistic rule."""
    n = z.shape[0]
    lo = (n + 1) // 2 - 1  # floor((n+1)/2), 1-based -> 0-based
    hi = (n + 2) // 2 - 1
    return 0.5 * (float(z[lo]) + float(z[hi]))


def median(sample) -> float:
    """Average of the floor((n+1)/2)-th and floor((n+2)/2)-th order statistics."""
    z = np.sort(_as_sample(sample))
    return median_of_sorted(z)


def mad(sample) -> float:
    """Median absolute deviation about the median, using the same Med rule."""
    z = _as_sample(sample)
    m = median_of_sorted(np.sort(z))
    return median_of_sorted(np.sort(np.abs(z - m)))


def outlyingness_1d(x: float, sample) -> float:
    """|x - Med| / MAD; raises when the sample's MAD is zero."""
    z = _as_sample(sample)
    m = median_of_sorted(np.sort(z))
    s = median_of_sorted(np.sort(np.abs(z - m)))
    if s <= 0.0:
        raise DegenerateScaleError("MAD of the sample is zero; outlyingness undefined")
    return abs(float(x) - m) / s


def median_rows(mat: np.ndarray) -> np.ndarray:
    """Vectorized exact medians of each row of a 2-D array."""
    z = np.sort(mat, axis=1)
    n = mat.shape[1]
    lo = (n + 1) // 2 - 1
    hi = (n + 2) // 2 - 1
    return 0.5 * (z[:, lo] + z[:, hi])


def med_mad_rows(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized exact (Med, MAD) of each row of a 2-D array."""
    med = median_rows(mat)
    madv = median_rows(np.abs(mat - med[:, None]))
    return med, madv
