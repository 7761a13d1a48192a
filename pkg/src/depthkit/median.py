"""Depth-maximizing centers: sample mean, projection median, Tukey median.

The Tukey median follows the region-averaging definition (average of the
inner-most halfspace-depth trimmed region). The continuum region is averaged
as its uniform centroid, approximated by seeded rejection sampling; the
Monte-Carlo standard error of the centroid is surfaced as
``method_tolerance`` instead of being hidden.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import depth, univariate
from .core import Dataset, Point, RngSeed
from .errors import ConvergenceError, PreconditionError

__all__ = [
    "MedianResult",
    "sample_mean",
    "projection_median",
    "halfspace_median",
    "center_for_method",
]


@dataclass(frozen=True)
class MedianResult:
    point: Point
    attained_depth: float
    method_tolerance: float


def worker_count(n_tasks: int) -> int:
    """Worker cap from DEPTHKIT_THREADS (default: sequential)."""
    raw = os.environ.get("DEPTHKIT_THREADS", "1")
    try:
        cap = max(1, int(raw))
    except ValueError:
        cap = 1
    return max(1, min(cap, n_tasks, os.cpu_count() or 1))


def sample_mean(dataset: Dataset) -> Point:
    return Point(dataset.as_array().mean(axis=0))


def _coordinatewise_median(dataset: Dataset) -> np.ndarray:
    arr = dataset.as_array()
    return np.array([univariate.median(arr[:, j]) for j in range(arr.shape[1])])


def projection_median(
    dataset: Dataset,
    tol: float = 1e-8,
    budget: int | None = None,
    seed: RngSeed = RngSeed(0),
) -> MedianResult:
    """Maximizer of projection depth by multi-start Nelder-Mead (d <= 3).

    Starts: coordinatewise median, sample mean, and 8 seeded perturbations.
    Each start terminates once the simplex diameter falls below
    ``tol * data scale``; the best local optimum wins (the sample projection
    median is unique, so accepting the best restart is sound).
    """
    d = dataset.dim
    if d > 3:
        raise PreconditionError("projection_median supports d <= 3 with the default optimizer")
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    if d == 1:
        m = univariate.median(dataset.as_array()[:, 0])
        # the univariate outlyingness |x - Med|/MAD is minimized exactly at Med
        return MedianResult(Point([m]), attained_depth=1.0, method_tolerance=0.0)

    scale = dataset.scale
    coordmed = _coordinatewise_median(dataset)
    mean = dataset.as_array().mean(axis=0)
    rng = np.random.default_rng(seed.seed ^ 0x9E3779B97F4A7C15)
    starts = [coordmed, mean] + [
        coordmed + 0.05 * scale * rng.standard_normal(d) for _ in range(8)
    ]

    def objective(z: np.ndarray) -> float:
        return float(depth.outlyingness_batch(z[None, :], dataset, budget, seed)[0])

    def solve_one(z0: np.ndarray):
        return optimize.minimize(
            objective,
            z0,
            method="Nelder-Mead",
            options={
                "xatol": tol * scale,
                "fatol": 1e30,  # termination is the simplex-diameter rule only
                "maxiter": 4000,
                "maxfev": 6000,
            },
        )

    workers = worker_count(len(starts))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(solve_one, starts))
    else:
        results = [solve_one(z0) for z0 in starts]

    converged = [r for r in results if r.success]
    if not converged:
        best = min(results, key=lambda r: (r.fun, tuple(r.x)))
        raise ConvergenceError(
            "projection-median search hit the iteration cap on every start",
            best_point=Point(best.x),
            best_value=1.0 / (1.0 + best.fun),
        )
    # order-independent reduction: compare (objective, lexicographic point)
    best = min(converged, key=lambda r: (r.fun, tuple(r.x)))
    return MedianResult(
        Point(best.x),
        attained_depth=1.0 / (1.0 + float(best.fun)),
        method_tolerance=tol,
    )


def halfspace_median(
    dataset: Dataset, grid_budget: int = 64, seed: RngSeed = RngSeed(0)
) -> MedianResult:
    """Average of the inner-most halfspace-depth trimmed region (d <= 2).

    d = 1 is exact via order statistics. d = 2 estimates the max depth over
    all data points plus 10*grid_budget jittered interior samples, then
    averages rejection-sampled points of the deepest region.
    """
    d = dataset.dim
    arr = dataset.as_array()
    n = dataset.n
    if d == 1:
        z = np.sort(arr[:, 0])
        # the deepest region is [z_(ceil(n/2)), z_(floor(n/2)+1)] (1-based)
        lo, hi = z[(n - 1) // 2], z[n // 2]
        point = 0.5 * (lo + hi)
        att = depth.halfspace_depth(Point([point]), dataset).value
        return MedianResult(Point([point]), attained_depth=att, method_tolerance=0.0)
    if d != 2:
        raise PreconditionError("halfspace_median supports d <= 2 (exact sweep dimensionality)")
    if grid_budget < 1:
        raise PreconditionError("grid_budget must be >= 1")

    rng = np.random.default_rng(seed.seed ^ 0xC2B2AE3D27D4EB4F)
    lo = arr.min(axis=0)
    hi = arr.max(axis=0)
    jitter = rng.uniform(lo, hi, size=(10 * grid_budget, 2))
    candidates = np.vstack([arr, jitter, arr.mean(axis=0)[None, :]])
    counts = np.rint(depth.halfspace_batch(candidates, dataset) * n).astype(int)
    k_max = int(counts.max())

    achievers = [candidates[counts == k_max]]
    target = 256
    got = int((counts == k_max).sum())
    for _ in range(40):
        if got >= target:
            break
        batch = rng.uniform(lo, hi, size=(512, 2))
        c = np.rint(depth.halfspace_batch(batch, dataset) * n).astype(int)
        hitting = batch[c == k_max]
        achievers.append(hitting)
        got += hitting.shape[0]
    region = np.vstack(achievers)
    centroid = region.mean(axis=0)
    if region.shape[0] > 1:
        se = float(np.linalg.norm(region.std(axis=0, ddof=1) / np.sqrt(region.shape[0])))
    else:
        se = 0.0
    att = depth.halfspace_depth(Point(centroid), dataset).value
    return MedianResult(Point(centroid), attained_depth=att, method_tolerance=se)


def center_for_method(method: depth.DepthMethod, dataset: Dataset) -> Point:
    """The natural depth-maximizing center for each method."""
    t = method.tag
    if t in (depth.DepthTag.MAHALANOBIS, depth.DepthTag.ZONOID, depth.DepthTag.EXTENDED_ZONOID):
        return sample_mean(dataset)
    if t is depth.DepthTag.PROJECTION:
        return projection_median(dataset, budget=method.budget, seed=method.seed).point
    if t in (depth.DepthTag.HALFSPACE, depth.DepthTag.EXTENDED_HALFSPACE):
        return halfspace_median(dataset, seed=method.seed).point
    raise PreconditionError(f"unknown method {t}")
