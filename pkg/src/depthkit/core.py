"""Datasets, points, directions, and deterministic randomness.

Everything here is immutable and safe to share across workers. Direction
streams are deterministic functions of an :class:`RngSeed`, so any
approximation built on them is reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import norm, qmc

from .errors import PreconditionError

__all__ = [
    "Point",
    "Direction",
    "Dataset",
    "RngSeed",
    "validate_general_position",
    "random_directions",
    "GENERAL_POSITION_RTOL",
]

# Degeneracy detection is scale-free: tolerances multiply the dataset's
# coordinate scale (max absolute coordinate).
GENERAL_POSITION_RTOL = 1e-9

_UNIT_NORM_TOL = 1e-12

# Exact sweep over all (d+1)-subsets is O(n^{d+1}); beyond this size we
# sample 10*n random subsets and report "probably in general position".
_EXACT_GP_LIMIT = 200


def _finite_coords(coords: Iterable[float], what: str) -> tuple[float, ...]:
    vals = tuple(float(c) for c in coords)
    if len(vals) < 1:
        raise PreconditionError(f"{what} needs at least one coordinate")
    if not all(math.isfinite(v) for v in vals):
        raise PreconditionError(f"{what} has non-finite coordinates: {vals}")
    return vals


@dataclass(frozen=True)
class Point:
    """A query point in R^d."""

    coords: tuple[float, ...]

    def __init__(self, coords: Iterable[float]):
        object.__setattr__(self, "coords", _finite_coords(coords, "Point"))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class Direction:
    """A unit vector in R^d (Euclidean norm 1 within 1e-12)."""

    coords: tuple[float, ...]

    def __init__(self, coords: Iterable[float]):
        vals = _finite_coords(coords, "Direction")
        nrm = math.sqrt(sum(v * v for v in vals))
        if abs(nrm - 1.0) > _UNIT_NORM_TOL:
            raise PreconditionError(f"Direction is not unit-norm: |u| = {nrm!r}")
        object.__setattr__(self, "coords", vals)

    @classmethod
    def from_vector(cls, vec: Iterable[float]) -> "Direction":
        """Normalize an arbitrary nonzero vector into a Direction."""
        arr = np.asarray(tuple(vec), dtype=float)
        nrm = float(np.linalg.norm(arr))
        if not math.isfinite(nrm) or nrm <= 0.0:
            raise PreconditionError("cannot normalize a zero or non-finite vector")
        return cls((arr / nrm).tolist())

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class RngSeed:
    """64-bit unsigned seed; identical seeds give identical direction streams."""

    seed: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise PreconditionError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True, eq=False)
class Dataset:
    """An immutable n x d table of observations.

    ``general_position`` records whether every (d+1)-subset of points spans
    affine dimension d (checked at construction unless a flag is supplied).
    Datasets failing the check are accepted but flagged; operations that
    genuinely need a positive robust scale decide for themselves (see
    :func:`depthkit.depth.outlyingness`).
    """

    _array: np.ndarray = field(repr=False)
    general_position: bool = True
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __init__(self, points: Sequence[Point] | np.ndarray, general_position: bool | None = None):
        if isinstance(points, np.ndarray):
            arr = np.array(points, dtype=float, copy=True)
        else:
            pts = list(points)
            if not pts:
                raise PreconditionError("Dataset needs at least one point")
            dims = {p.dim for p in pts}
            if len(dims) != 1:
                raise PreconditionError(f"dimension mismatch among points: {sorted(dims)}")
            arr = np.array([p.coords for p in pts], dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise PreconditionError(f"Dataset array must be n x d, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise PreconditionError("Dataset has non-finite coordinates")
        arr.setflags(write=False)
        object.__setattr__(self, "_array", arr)
        object.__setattr__(self, "_memo", {})
        if general_position is None:
            general_position = validate_general_position(self)
        object.__setattr__(self, "general_position", bool(general_position))

    @classmethod
    def from_array(cls, arr, general_position: bool | None = None) -> "Dataset":
        return cls(np.asarray(arr, dtype=float), general_position)

    @property
    def n(self) -> int:
        return self._array.shape[0]

    @property
    def dim(self) -> int:
        return self._array.shape[1]

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(Point(row) for row in self._array)

    def as_array(self) -> np.ndarray:
        """Read-only view of the underlying n x d array."""
        return self._array

    @property
    def scale(self) -> float:
        """Coordinate scale: max absolute coordinate (>= tiny positive)."""
        key = "scale"
        if key not in self._memo:
            self._memo[key] = max(float(np.abs(self._array).max()), 1e-30)
        return self._memo[key]


def _subset_spans(arr: np.ndarray, idx: np.ndarray, tol: float) -> np.ndarray:
    """Vectorized affine-span test for batches of (d+1)-point subsets.

    idx: (m, d+1) integer array of point indices. Returns boolean (m,) —
    True where the subset spans affine dimension d (|det| > tol).
    """
    pts = arr[idx]                       # (m, d+1, d)
    diffs = pts[:, 1:, :] - pts[:, :1, :]  # (m, d, d)
    return np.abs(np.linalg.det(diffs)) > tol


def validate_general_position(dataset: Dataset, tol: float | None = None) -> bool:
    """True iff no d+1 points lie on a common (d-1)-dimensional hyperplane.

    Exact for n <= 200 (all subsets); randomized for larger n (10*n subsets,
    so True then means "probably true"). ``tol`` defaults to
    ``GENERAL_POSITION_RTOL * dataset.scale``.
    """
    arr = dataset.as_array()
    n, d = arr.shape
    if tol is None:
        tol = GENERAL_POSITION_RTOL * dataset.scale
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    if n < d + 1:
        # Cannot span affine dimension d; the flag promises n >= d+1.
        return False

    if n <= _EXACT_GP_LIMIT:
        combos = itertools.combinations(range(n), d + 1)
        chunk = 200_000
        while True:
            block = np.array(list(itertools.islice(combos, chunk)), dtype=np.intp)
            if block.size == 0:
                return True
            if not _subset_spans(arr, block, tol).all():
                return False

    rng = np.random.default_rng(0xD5A7)  # fixed: validation is not seed-dependent
    m = 10 * n
    idx = np.empty((m, d + 1), dtype=np.intp)
    for i in range(m):
        idx[i] = rng.choice(n, size=d + 1, replace=False)
    return bool(_subset_spans(arr, idx, tol).all())


def max_collinear_count(dataset: Dataset, tol: float | None = None) -> int:
    """Largest number of dataset points on a single (d-1)-dim hyperplane.

    Exact for d <= 2; used to certify MAD positivity (projection depth needs
    every direction's projected sample to keep more than half its points off
    any single value). For d >= 3 an exact sweep is not attempted and the
    weaker general-position flag is the only upfront certificate.
    """
    arr = dataset.as_array()
    n, d = arr.shape
    if tol is None:
        tol = GENERAL_POSITION_RTOL * dataset.scale
    key = ("max_collinear", float(tol))
    if key in dataset._memo:
        return dataset._memo[key]
    if d == 1:
        vals = np.sort(arr[:, 0])
        best, run = 1, 1
        for a, b in zip(vals[:-1], vals[1:]):
            run = run + 1 if b - a <= tol else 1
            best = max(best, run)
    elif d == 2:
        best = min(n, 2)
        for i in range(n):
            v = arr - arr[i]
            r = np.hypot(v[:, 0], v[:, 1])
            far = r > tol
            n_coincident = int((~far).sum()) - 1  # minus the anchor itself
            ang = np.sort(np.mod(np.arctan2(v[far, 1], v[far, 0]), np.pi))
            if ang.size == 0:
                best = max(best, 1 + n_coincident)
                continue
            # angular tolerance matched to the collinearity tolerance
            atol = tol / max(float(r.max()), tol)
            ext = np.concatenate([ang, ang + np.pi])  # circular window, period pi
            hi = np.searchsorted(ext, ang + atol, side="right")
            run = int((hi - np.arange(ang.size)).max())
            best = max(best, run + 1 + n_coincident)
    else:
        raise PreconditionError("max_collinear_count supports d <= 2 only")
    dataset._memo[key] = best
    return best


def _max_multiplicity(arr: np.ndarray, tol: float) -> int:
    n = arr.shape[0]
    best = 1
    for i in range(n):
        close = np.abs(arr - arr[i]).max(axis=1) <= tol
        best = max(best, int(close.sum()))
    return best


def random_directions(d: int, count: int, seed: RngSeed = RngSeed(0)) -> list[Direction]:
    """Deterministic covering of the unit sphere S^{d-1}.

    d = 1: alternating +1/-1 so both signs appear after sign closure.
    d = 2: equally spaced angles pi*k/count (antipodes are redundant for
    depth purposes, so half a turn suffices).
    d >= 3: scrambled-Sobol points mapped through the inverse normal CDF and
    normalized; prefixes are nested, so enlarging ``count`` only appends.
    """
    if d < 1 or count < 1:
        raise PreconditionError(f"need d >= 1 and count >= 1, got d={d}, count={count}")
    arr = unit_vectors(d, count, seed)
    return [Direction(row) for row in arr]


def unit_vectors(d: int, count: int, seed: RngSeed = RngSeed(0)) -> np.ndarray:
    """Array form of :func:`random_directions` (count x d, rows unit-norm)."""
    if d == 1:
        signs = np.where(np.arange(count) % 2 == 0, 1.0, -1.0)
        return signs.reshape(-1, 1)
    if d == 2:
        theta = np.pi * np.arange(count) / count
        return np.column_stack([np.cos(theta), np.sin(theta)])
    eng = qmc.Sobol(d=d, scramble=True, seed=int(seed.seed))
    # draw a power-of-two block and slice: keeps Sobol balance and makes
    # prefixes nested across different counts
    u = eng.random(1 << max(0, (count - 1).bit_length()))[:count]
    u = np.clip(u, 1e-12, 1 - 1e-12)
    g = norm.ppf(u)
    nrm = np.linalg.norm(g, axis=1, keepdims=True)
    nrm[nrm == 0] = 1.0
    v = g / nrm
    # renormalize once more to push rounding inside 1e-12
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v
