"""Convex hulls, membership tests, and ray-boundary intersections.

2-D queries use the explicit hull polygon; every other dimension goes
through small linear programs, so no facet enumeration is ever needed
beyond the plane. Boundary points count as inside, matching the closed
convex hull convention used by the depth case splits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linprog
from .core import Dataset, Direction, Point
from .errors import PreconditionError, SolverError

__all__ = [
    "HullPolygon2D",
    "RayHit",
    "convex_hull_2d",
    "contains_point",
    "ray_boundary_intersection",
    "MEMBERSHIP_RTOL",
]

# membership tolerance, relative to the hull diameter
MEMBERSHIP_RTOL = 1e-9


@dataclass(frozen=True)
class HullPolygon2D:
    """Counter-clockwise, strictly convex vertex loop (a subset of the data)."""

    vertices: tuple[Point, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray([v.coords for v in self.vertices], dtype=float)


@dataclass(frozen=True)
class RayHit:
    """Exit of a ray from inside the hull: boundary_point = center + lambda * dir."""

    lambda_boundary: float
    boundary_point: Point


def _monotone_chain(arr: np.ndarray, eps: float) -> np.ndarray:
    """Indices of hull vertices, CCW, collinear points dropped."""
    order = np.lexsort((arr[:, 1], arr[:, 0]))

    def build(idx_iter):
        out: list[int] = []
        for i in idx_iter:
            while len(out) >= 2:
                o, a = arr[out[-2]], arr[out[-1]]
                cross = (a[0] - o[0]) * (arr[i, 1] - o[1]) - (a[1] - o[1]) * (arr[i, 0] - o[0])
                if cross <= eps:
                    out.pop()
                else:
                    break
            out.append(int(i))
        return out

    lower = build(order)
    upper = build(order[::-1])
    return np.array(lower[:-1] + upper[:-1], dtype=np.intp)


def convex_hull_2d(dataset: Dataset) -> HullPolygon2D:
    """Andrew monotone-chain hull of a 2-D dataset (n >= 3)."""
    if dataset.dim != 2:
        raise PreconditionError(f"convex_hull_2d needs d = 2, got d = {dataset.dim}")
    if dataset.n < 3:
        raise PreconditionError("convex_hull_2d needs n >= 3")
    key = "hull2d"
    if key not in dataset._memo:
        arr = dataset.as_array()
        eps = 1e-12 * dataset.scale**2
        idx = _monotone_chain(arr, eps)
        if idx.shape[0] < 3:
            raise PreconditionError("hull is degenerate (all points nearly collinear)")
        dataset._memo[key] = idx
    idx = dataset._memo[key]
    return HullPolygon2D(tuple(Point(row) for row in dataset.as_array()[idx]))


def _hull_halfplanes(dataset: Dataset) -> tuple[np.ndarray, np.ndarray, float]:
    """(outward normals N, offsets c, diameter): hull = {z : N z <= c}."""
    key = "hull2d_planes"
    if key not in dataset._memo:
        V = convex_hull_2d(dataset).as_array()
        E = np.roll(V, -1, axis=0) - V
        N = np.column_stack([E[:, 1], -E[:, 0]])  # outward for CCW loops
        N /= np.linalg.norm(N, axis=1, keepdims=True)
        c = np.einsum("ij,ij->i", N, V)
        span = V.max(axis=0) - V.min(axis=0)
        diam = float(np.hypot(span[0], span[1]))
        dataset._memo[key] = (N, c, diam)
    return dataset._memo[key]


def _point_array(x) -> np.ndarray:
    if isinstance(x, Point):
        return x.as_array()
    return np.asarray(x, dtype=float)


def contains_points(dataset: Dataset, xs: np.ndarray, tol: float = MEMBERSHIP_RTOL) -> np.ndarray:
    """Vectorized membership for a (m, d) batch of query points."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    arr = dataset.as_array()
    d = dataset.dim
    if xs.shape[1] != d:
        raise PreconditionError(f"query dimension {xs.shape[1]} != dataset dimension {d}")
    if d == 1:
        lo, hi = float(arr.min()), float(arr.max())
        slack = tol * max(hi - lo, 1e-30)
        return (xs[:, 0] >= lo - slack) & (xs[:, 0] <= hi + slack)
    if d == 2:
        N, c, diam = _hull_halfplanes(dataset)
        margins = xs @ N.T - c
        return margins.max(axis=1) <= tol * diam
    return np.array([_contains_lp(dataset, x, tol) for x in xs], dtype=bool)


def contains_point(dataset: Dataset, x, tol: float = MEMBERSHIP_RTOL) -> bool:
    """Is x a convex combination of the dataset points (boundary inclusive)?"""
    return bool(contains_points(dataset, _point_array(x)[None, :], tol)[0])


def _contains_lp(dataset: Dataset, x: np.ndarray, tol: float) -> bool:
    arr = dataset.as_array()
    n = arr.shape[0]
    A = np.vstack([arr.T, np.ones((1, n))])
    b = np.concatenate([x, [1.0]])
    prob = linprog.LpProblem(
        objective=np.zeros(n),
        eq_matrix=A,
        eq_rhs=b,
        lower=np.zeros(n),
        upper=np.ones(n),
    )
    return linprog.feasible(prob, tol=max(tol, 1e-12))


def _interior_margin_2d(dataset: Dataset, center: np.ndarray) -> float:
    N, c, _ = _hull_halfplanes(dataset)
    return float((c - N @ center).min())


def ray_exits(dataset: Dataset, center: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Vectorized 2-D exit distances for unit directions ``dirs`` (m, 2)."""
    N, c, diam = _hull_halfplanes(dataset)
    num = c - N @ center  # positive for interior centers
    den = dirs @ N.T      # (m, h)
    tiny = 1e-14
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(den > tiny, num[None, :] / den, np.inf)
    lam = t.min(axis=1)
    bad = ~np.isfinite(lam)
    if np.any(bad):
        # edge-parallel degeneracies: resolve through the LP route
        for i in np.flatnonzero(bad):
            lam[i] = _ray_exit_lp(dataset, center, dirs[i])
    return lam


def _ray_exit_lp(dataset: Dataset, center: np.ndarray, direction: np.ndarray) -> float:
    arr = dataset.as_array()
    n, d = arr.shape
    # maximize t  s.t.  sum p_i X_i - t * dir = center, sum p_i = 1
    A = np.vstack([np.hstack([arr.T, -direction[:, None]]), np.hstack([np.ones(n), [0.0]])])
    b = np.concatenate([center, [1.0]])
    c = np.concatenate([np.zeros(n), [-1.0]])
    lo = np.zeros(n + 1)
    up = np.concatenate([np.ones(n), [np.inf]])
    sol = linprog.solve_lp(linprog.LpProblem(c, A, b, lo, up))
    if sol.status is not linprog.LpStatus.OPTIMAL:
        raise PreconditionError(
            f"ray exit LP ended {sol.status.value}; is the center inside the hull?"
        )
    return float(sol.solution[n])


def ray_boundary_intersection(dataset: Dataset, center, direction: Direction) -> RayHit:
    """Exit distance of the ray center + t*direction from the convex hull.

    The center must be strictly inside conv(X^n).
    """
    cen = _point_array(center)
    u = direction.as_array() if isinstance(direction, Direction) else np.asarray(direction, float)
    d = dataset.dim
    if cen.shape[0] != d or u.shape[0] != d:
        raise PreconditionError("center/direction dimension mismatch with dataset")
    arr = dataset.as_array()
    if d == 1:
        lo, hi = float(arr.min()), float(arr.max())
        if not (lo < cen[0] < hi):
            raise PreconditionError("center must be strictly inside the hull")
        lam = (hi - cen[0]) if u[0] > 0 else (cen[0] - lo)
    elif d == 2:
        if _interior_margin_2d(dataset, cen) <= 0.0:
            raise PreconditionError("center must be strictly inside the hull")
        lam = float(ray_exits(dataset, cen, u[None, :])[0])
    else:
        if not contains_point(dataset, cen):
            raise PreconditionError("center must be strictly inside the hull")
        lam = _ray_exit_lp(dataset, cen, u)
        if lam <= 0.0:
            raise PreconditionError("center sits on the hull boundary along this ray")
    hit = cen + lam * u
    return RayHit(lambda_boundary=float(lam), boundary_point=Point(hit))
