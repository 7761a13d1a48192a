"""Radial contour tracing and the empirical contour-similarity machinery.

One tracer serves all six depth methods: per ray from a chosen center,
bisect the monotone depth-along-ray function for the requested level. The
similarity toolkit works on the transformed values g = 1/depth - 1, which
are affine in the ray length for Mahalanobis depth (everywhere), for the
extended depths (outside the hull), and for projection depth beyond a
data-dependent radius; the linear-tail detector estimates that radius
empirically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import depth, median
from .core import Dataset, Direction, Point, RngSeed
from .errors import (
    EmptyRegionError,
    MonotonicityError,
    NoLinearTailError,
    NumericError,
    PreconditionError,
)

__all__ = [
    "ContourPolygon",
    "RayProfile",
    "LinearTail",
    "SimilarityReport",
    "ray_profile",
    "detect_linear_tail",
    "trace_contour",
    "estimate_tau_star",
    "similarity_check",
    "count_facets_2d",
]

_MONOTONE_TOL = 1e-9
_MIN_TAIL_POINTS = 3


@dataclass(frozen=True)
class ContourPolygon:
    """Vertices of one depth contour, one per traced ray, ordered by ray angle."""

    tau: float
    center: Point
    vertices: tuple[Point, ...]
    method: depth.DepthMethod

    def vertex_array(self) -> np.ndarray:
        return np.asarray([v.coords for v in self.vertices], dtype=float)

    def ray_lambdas(self) -> np.ndarray:
        return np.linalg.norm(self.vertex_array() - self.center.as_array(), axis=1)

    def ray_directions(self) -> np.ndarray:
        diff = self.vertex_array() - self.center.as_array()
        lam = np.linalg.norm(diff, axis=1)
        lam[lam == 0] = 1.0
        return diff / lam[:, None]


@dataclass(frozen=True)
class RayProfile:
    """Sampled (lambda, depth) pairs along one ray, lambda increasing."""

    center: Point
    direction: Direction
    samples: tuple[tuple[float, float], ...]

    def lambdas(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    def depths(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])


@dataclass(frozen=True)
class LinearTail:
    """Fitted tail g(lambda) ~ a_hat + b_hat*lambda of g = 1/depth - 1.

    ``residual`` is the max absolute deviation over the fitted samples;
    ``ell_hat`` is the smallest sampled radius from which the fit holds.
    """

    ell_hat: float
    a_hat: float
    b_hat: float
    residual: float

    def __post_init__(self):
        if not self.b_hat > 0:
            raise NoLinearTailError(f"fitted tail slope must be positive, got {self.b_hat}")


@dataclass(frozen=True)
class SimilarityReport:
    """Per-ray collinearity residuals of 1/tau - 1 against ray length."""

    tau_star_hat: float
    per_ray: tuple[tuple[Direction, float], ...]
    passed: bool


def _ray_directions(d: int, n_rays: int, seed: RngSeed) -> np.ndarray:
    """Full-circle ray fans: 2-D uses equally spaced angles; d >= 3 uses the
    deterministic sphere covering; d = 1 is the two signs."""
    if d == 1:
        return np.array([[1.0], [-1.0]])[: max(1, min(2, n_rays))]
    if d == 2:
        ang = 2.0 * np.pi * np.arange(n_rays) / n_rays
        return np.column_stack([np.cos(ang), np.sin(ang)])
    from .core import unit_vectors

    return unit_vectors(d, n_rays, seed)


def ray_profile(
    method: depth.DepthMethod,
    dataset: Dataset,
    center: Point,
    direction: Direction,
    lambda_max: float,
    samples: int,
) -> RayProfile:
    """Depth at equally spaced radii along center + lambda*direction.

    Monotonicity violations beyond 1e-9 raise :class:`MonotonicityError`
    rather than being silently smoothed; they usually mean the supremum
    budget is too small for the requested diagnostic.
    """
    if samples < 2:
        raise PreconditionError("need at least 2 samples")
    if lambda_max <= 0:
        raise PreconditionError("lambda_max must be positive")
    cen = center.as_array() if isinstance(center, Point) else np.asarray(center, float)
    u = direction.as_array() if isinstance(direction, Direction) else np.asarray(direction, float)
    lam = np.linspace(0.0, lambda_max, samples)
    pts = cen[None, :] + lam[:, None] * u[None, :]
    vals = depth.evaluate_batch(method, pts, dataset, center=Point(cen))
    rises = np.diff(vals)
    worst = float(rises.max()) if rises.size else 0.0
    if worst > _MONOTONE_TOL:
        k = int(np.argmax(rises))
        raise MonotonicityError(
            f"depth rose by {worst:.3e} between lambda={lam[k]:.6g} and "
            f"lambda={lam[k + 1]:.6g}; increase the budget or check the center"
        )
    return RayProfile(
        center=Point(cen),
        direction=Direction(u) if not isinstance(direction, Direction) else direction,
        samples=tuple(zip(lam.tolist(), vals.tolist())),
    )


def detect_linear_tail(profile: RayProfile, rel_tol: float) -> LinearTail:
    """Smallest sampled radius from which g = 1/depth - 1 is affine in lambda.

    Scans suffixes from the left; the first suffix (>= 3 points) whose
    least-squares line has max relative residual <= rel_tol and positive
    slope wins. Raises :class:`NoLinearTailError` when no suffix qualifies
    (budget too small, or lambda_max below the tail threshold).
    """
    if rel_tol <= 0:
        raise PreconditionError("rel_tol must be positive")
    lam = profile.lambdas()
    dep = profile.depths()
    if lam.shape[0] < 20:
        raise PreconditionError("detect_linear_tail expects a profile with >= 20 samples")
    if np.any(dep <= 0):
        raise PreconditionError("profile contains zero depth; tail transform undefined")
    g = 1.0 / dep - 1.0
    m = lam.shape[0]
    gmax = float(np.abs(g).max())
    # the fitted line must actually rise across the suffix, not just carry
    # rounding noise in its slope
    slope_floor = 1e-9 * max(gmax, 1.0) / max(float(lam[-1] - lam[0]), 1e-30)
    for j in range(0, m - _MIN_TAIL_POINTS + 1):
        ls, gs = lam[j:], g[j:]
        A = np.column_stack([np.ones_like(ls), ls])
        (a, b), *_ = np.linalg.lstsq(A, gs, rcond=None)
        fit = a + b * ls
        abs_res = np.abs(fit - gs)
        denom = np.maximum(np.abs(gs), 1e-12 * max(gmax, 1.0))
        if float((abs_res / denom).max()) <= rel_tol and b > slope_floor:
            return LinearTail(
                ell_hat=float(lam[j]),
                a_hat=float(a),
                b_hat=float(b),
                residual=float(abs_res.max()),
            )
    raise NoLinearTailError(
        "no suffix of the profile fits a line within rel_tol; "
        "budget too small or lambda_max below the tail threshold"
    )


def trace_contour(
    method: depth.DepthMethod,
    dataset: Dataset,
    tau: float,
    center: Point,
    n_rays: int = 360,
    tol: float = 1e-9,
) -> ContourPolygon:
    """Per-ray bisection for the radius where depth crosses ``tau``.

    Requires 0 < tau <= depth(center) and rays along which the depth is
    monotone nonincreasing (true for each method from its own center). The
    returned vertices sit within ``tol * data scale`` of the crossing radius.
    """
    if tau <= 0:
        raise PreconditionError("tau must be positive (depth regions are bounded only then)")
    if n_rays < 1:
        raise PreconditionError("n_rays must be >= 1")
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    cen = center.as_array()
    center_depth = depth.evaluate(method, center, dataset, center=center).value
    if tau > center_depth + 1e-12:
        raise EmptyRegionError(
            f"tau={tau:.6g} exceeds depth at center ({center_depth:.6g}); region empty"
        )
    dirs = _ray_directions(dataset.dim, n_rays, method.seed)
    m = dirs.shape[0]
    scale = dataset.scale

    hi = np.full(m, max(scale, 1e-12))
    for _ in range(200):
        pts = cen[None, :] + hi[:, None] * dirs
        vals = depth.evaluate_batch(method, pts, dataset, center=center)
        need = vals >= tau
        if not np.any(need):
            break
        hi[need] *= 2.0
    else:
        raise NumericError("could not bracket the contour; depth does not drop below tau")

    lo = np.zeros(m)
    lam_tol = tol * scale
    for _ in range(200):
        if float((hi - lo).max()) <= lam_tol:
            break
        mid = 0.5 * (lo + hi)
        pts = cen[None, :] + mid[:, None] * dirs
        vals = depth.evaluate_batch(method, pts, dataset, center=center)
        inside = vals >= tau
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)

    verts = cen[None, :] + lo[:, None] * dirs
    return ContourPolygon(
        tau=float(tau),
        center=Point(cen),
        vertices=tuple(Point(v) for v in verts),
        method=method,
    )


def estimate_tau_star(
    dataset: Dataset,
    budget: int | None = None,
    seed: RngSeed = RngSeed(0),
    n_rays: int = 16,
) -> float:
    """Conservative estimate of the level below which projection contours
    are mutually similar.

    Probes ``n_rays`` rays from the projection median, takes the largest
    per-ray linear-tail onset radius, and returns the smallest projection
    depth observed at that radius. Detection failures propagate.
    """
    med = median.projection_median(dataset, budget=budget, seed=seed)
    cen = med.point.as_array()
    dirs = _ray_directions(dataset.dim, n_rays, seed)
    method = depth.DepthMethod(depth.DepthTag.PROJECTION, budget=budget, seed=seed)
    arr = dataset.as_array()
    reach = float(np.linalg.norm(arr - cen, axis=1).max())

    ell = 0.0
    for u in dirs:
        tail = None
        lam_max = 4.0 * reach
        for _ in range(3):
            profile = ray_profile(method, dataset, med.point, Direction(u), lam_max, 48)
            try:
                tail = detect_linear_tail(profile, rel_tol=1e-3)
                break
            except NoLinearTailError:
                lam_max *= 2.0
        if tail is None:
            # final attempt surfaces the error to the caller
            profile = ray_profile(method, dataset, med.point, Direction(u), lam_max, 48)
            tail = detect_linear_tail(profile, rel_tol=1e-3)
        ell = max(ell, tail.ell_hat)

    ring = cen[None, :] + ell * dirs
    vals = depth.evaluate_batch(method, ring, dataset)
    return float(vals.min())


def similarity_check(
    contours, center: Point, rel_tol: float
) -> SimilarityReport:
    """Per-ray collinearity of (lambda, 1/tau - 1) across contour crossings.

    All contours must share the center and the ray set. Pass means every
    ray's points sit on one line within ``rel_tol`` relative residual.
    """
    contours = list(contours)
    if len(contours) < 3:
        raise PreconditionError("similarity_check needs at least 3 contours")
    taus = [c.tau for c in contours]
    if len(set(taus)) != len(taus):
        raise PreconditionError("contours must have distinct depth levels")
    cen = center.as_array()
    scale = max(float(np.abs(cen).max()), *(float(np.abs(c.vertex_array()).max()) for c in contours), 1e-30)
    for c in contours:
        if float(np.abs(c.center.as_array() - cen).max()) > 1e-9 * scale:
            raise PreconditionError("contours were traced from different centers")
    m = len(contours[0].vertices)
    if any(len(c.vertices) != m for c in contours):
        raise PreconditionError("contours have mismatched ray sets (different ray counts)")
    dir_sets = [c.ray_directions() for c in contours]
    for ds in dir_sets[1:]:
        if float(np.abs(ds - dir_sets[0]).max()) > 1e-6:
            raise PreconditionError("contours have mismatched ray sets (different directions)")

    lams = np.column_stack([c.ray_lambdas() for c in contours])    # (m, C)
    g = np.array([1.0 / c.tau - 1.0 for c in contours])            # (C,)
    per_ray = []
    worst = 0.0
    for i in range(m):
        A = np.column_stack([np.ones_like(lams[i]), lams[i]])
        coef, *_ = np.linalg.lstsq(A, g, rcond=None)
        fit = A @ coef
        res = float(np.max(np.abs(fit - g) / np.maximum(np.abs(g), 1e-30)))
        per_ray.append((Direction(dir_sets[0][i]), res))
        worst = max(worst, res)
    return SimilarityReport(
        tau_star_hat=float(max(taus)),
        per_ray=tuple(per_ray),
        passed=bool(worst <= rel_tol),
    )


def count_facets_2d(contour: ContourPolygon, angle_tol: float = 1e-3) -> int:
    """Number of maximal collinear runs of the traced vertex loop.

    Consecutive edges whose turning angle stays below ``angle_tol`` merge
    into one facet; every sharper turn starts a new one.
    """
    verts = contour.vertex_array()
    if verts.shape[1] != 2:
        raise PreconditionError("count_facets_2d needs a 2-D contour")
    if verts.shape[0] < 3:
        raise PreconditionError("need at least 3 vertices to count facets")
    edges = np.roll(verts, -1, axis=0) - verts
    lens = np.linalg.norm(edges, axis=1)
    keep = lens > 1e-15 * max(float(np.abs(verts).max()), 1e-30)
    edges = edges[keep]
    if edges.shape[0] < 2:
        return 1
    prev = np.roll(edges, 1, axis=0)
    cross = prev[:, 0] * edges[:, 1] - prev[:, 1] * edges[:, 0]
    dot = np.einsum("ij,ij->i", prev, edges)
    turning = np.abs(np.arctan2(cross, dot))
    straight = turning < angle_tol
    if not np.any(straight):
        # no collinear evidence anywhere (curvature at every vertex):
        # every turn is its own facet
        return int(straight.size)
    if np.all(straight):
        return 1
    # facets = maximal circular chains of straight vertices; the single
    # bridging edge between two chains is a ray-resolution artifact of the
    # corner, not a facet of its own
    s = straight.astype(int)
    starts = (s == 1) & (np.roll(s, 1) == 0)
    return int(starts.sum())
