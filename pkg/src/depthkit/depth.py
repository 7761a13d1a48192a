"""The six depth functions.

Exactness contract per method/dimension:

==================  =========================================================
Mahalanobis         closed form, exact
Projection          exact for d = 1; for d >= 2 the supremum is approximated
                    from below (covering directions + golden-section
                    refinement), so the depth is an upper bound that
                    converges from above as the budget grows
Halfspace           exact for d <= 2 (angular sweep); sampled upper bound
                    for d >= 3
Zonoid              exact up to LP tolerance
ExtendedHalfspace   case split: halfspace inside the hull, exact boundary
                    ratio outside
ExtendedZonoid      case split: zonoid inside, exact boundary ratio outside
==================  =========================================================

Boundary points count as inside for both extended case splits (the hull is
closed). All evaluations are pure; batch entry points vectorize over query
points with scheduling-independent reductions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import geometry, linprog, univariate
from .core import Dataset, Direction, Point, RngSeed, max_collinear_count, unit_vectors
from .errors import (
    DegenerateScaleError,
    PreconditionError,
    SingularCovarianceError,
    SolverError,
)

__all__ = [
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
    "evaluate",
    "evaluate_batch",
    "DEFAULT_BUDGET_PER_DIM",
]

DEFAULT_BUDGET_PER_DIM = 512

_COV_CONDITION_LIMIT = 1e12
_MAD_RTOL = 1e-12
_REFINE_CANDIDATES = 8
_GOLDEN_ITERS = 48
_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class DepthTag(enum.Enum):
    MAHALANOBIS = "mahalanobis"
    PROJECTION = "projection"
    HALFSPACE = "halfspace"
    ZONOID = "zonoid"
    EXTENDED_HALFSPACE = "ehd"
    EXTENDED_ZONOID = "ezd"


@dataclass(frozen=True)
class DepthMethod:
    """Method tag plus the approximation budget/seed for sampled suprema."""

    tag: DepthTag
    budget: int | None = None
    seed: RngSeed = RngSeed(0)

    def __post_init__(self):
        if self.budget is not None and self.budget < 1:
            raise PreconditionError("budget must be >= 1 when present")


@dataclass(frozen=True)
class DepthResult:
    value: float
    exact: bool
    budget_used: int

    def __post_init__(self):
        if not (-1e-12 <= self.value <= 1.0 + 1e-12):
            raise PreconditionError(f"depth value outside [0, 1]: {self.value}")


def _xarr(x, d: int) -> np.ndarray:
    arr = x.as_array() if isinstance(x, Point) else np.asarray(x, dtype=float)
    if arr.shape != (d,):
        raise PreconditionError(f"query point has shape {arr.shape}, expected ({d},)")
    return arr


def _default_budget(budget: int | None, d: int) -> int:
    if budget is None:
        return DEFAULT_BUDGET_PER_DIM * d
    if budget < 1:
        raise PreconditionError("budget must be >= 1")
    return int(budget)


# ---------------------------------------------------------------------------
# Mahalanobis depth


def _cov_solve(dataset: Dataset):
    key = "mahal"
    if key not in dataset._memo:
        arr = dataset.as_array()
        mean = arr.mean(axis=0)
        centered = arr - mean
        cov = centered.T @ centered / arr.shape[0]
        cond = float(np.linalg.cond(cov))
        if not np.isfinite(cond) or cond >= _COV_CONDITION_LIMIT:
            raise SingularCovarianceError(
                f"sample covariance condition number {cond:.3e} exceeds limit"
            )
        dataset._memo[key] = (mean, np.linalg.inv(cov))
    return dataset._memo[key]


def mahalanobis_batch(xs: np.ndarray, dataset: Dataset) -> np.ndarray:
    mean, cov_inv = _cov_solve(dataset)
    diff = np.atleast_2d(xs) - mean
    d2 = np.einsum("ij,jk,ik->i", diff, cov_inv, diff)
    return 1.0 / (1.0 + np.sqrt(np.maximum(d2, 0.0)))


def mahalanobis_depth(x, dataset: Dataset) -> DepthResult:
    """1 / (1 + Mahalanobis distance to the sample mean), with the 1/n covariance."""
    v = float(mahalanobis_batch(_xarr(x, dataset.dim)[None, :], dataset)[0])
    return DepthResult(v, exact=True, budget_used=0)


# ---------------------------------------------------------------------------
# Projection depth / outlyingness


def _require_mad_positive(dataset: Dataset) -> None:
    """Refuse datasets where some direction provably has zero MAD.

    Strict general position is sufficient but not necessary for a positive
    MAD in every direction (real rounded datasets routinely contain a few
    collinear triples while staying far from the >(n/2)-on-a-hyperplane
    degeneracy that actually kills the MAD). The exact criterion is applied
    for d <= 2; for d >= 3 degeneracy is caught per direction during
    evaluation.
    """
    if dataset.general_position:
        return
    n, d = dataset.n, dataset.dim
    threshold = (n + 2) // 2
    if d <= 2:
        if max_collinear_count(dataset) >= threshold:
            raise DegenerateScaleError(
                "dataset admits a direction with zero MAD "
                f"(>= {threshold} of {n} points on one hyperplane)"
            )
    elif n < d + 1:
        raise DegenerateScaleError("too few points for a positive MAD in every direction")


def _proj_context(dataset: Dataset, budget: int, seed: RngSeed):
    """Covering directions with cached per-direction Med/MAD."""
    key = ("proj", budget, seed.seed)
    if key not in dataset._memo:
        U = unit_vectors(dataset.dim, budget, seed)
        P = U @ dataset.as_array().T
        med, madv = univariate.med_mad_rows(P)
        _check_mads(madv, dataset)
        dataset._memo[key] = (U, med, madv)
    return dataset._memo[key]


def _check_mads(madv: np.ndarray, dataset: Dataset) -> None:
    if float(madv.min()) <= _MAD_RTOL * dataset.scale:
        raise DegenerateScaleError(
            "encountered a direction with MAD ~ 0; dataset too degenerate "
            "for projection depth"
        )


def _ratio_for_angles(theta: np.ndarray, xs: np.ndarray, dataset: Dataset) -> np.ndarray:
    """2-D ratio |u.x - Med(u.X)| / MAD(u.X) at angle arrays theta (m, C)."""
    X = dataset.as_array()
    ct, st = np.cos(theta), np.sin(theta)
    proj = ct[..., None] * X[:, 0] + st[..., None] * X[:, 1]  # (m, C, n)
    med, madv = _med_mad_lastaxis(proj)
    _check_mads(madv, dataset)
    num = np.abs(ct * xs[:, 0, None] + st * xs[:, 1, None] - med)
    return num / madv


def _ratio_for_vectors(V: np.ndarray, xs: np.ndarray, dataset: Dataset) -> np.ndarray:
    """Ratio at explicit unit directions V (m, C, d) for points xs (m, d)."""
    X = dataset.as_array()
    proj = V @ X.T  # (m, C, n)
    med, madv = _med_mad_lastaxis(proj)
    _check_mads(madv, dataset)
    num = np.abs(np.einsum("mcd,md->mc", V, xs) - med)
    return num / madv


def _med_mad_lastaxis(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    z = np.sort(a, axis=-1)
    n = a.shape[-1]
    lo = (n + 1) // 2 - 1
    hi = (n + 2) // 2 - 1
    med = 0.5 * (z[..., lo] + z[..., hi])
    dev = np.sort(np.abs(a - med[..., None]), axis=-1)
    return med, 0.5 * (dev[..., lo] + dev[..., hi])


def _golden_max(f, a: np.ndarray, b: np.ndarray, iters: int):
    """Vectorized golden-section maximization of f over brackets [a, b]."""
    x1 = a + (1.0 - _PHI) * (b - a)
    x2 = a + _PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        m = f1 < f2
        x1_old, f1_old = x1, f1
        a = np.where(m, x1, a)
        b = np.where(m, b, x2)
        x1 = np.where(m, x2, a + (1.0 - _PHI) * (b - a))
        x2 = np.where(m, a + _PHI * (b - a), x1_old)
        f1 = np.where(m, f2, f1_old)   # shrink-left: x1 <- old x2
        f2 = np.where(m, f2, f1_old)   # shrink-right: x2 <- old x1
        fnew = f(np.where(m, x2, x1))  # one fresh evaluation per element
        f1 = np.where(m, f1, fnew)
        f2 = np.where(m, fnew, f2)
    better = f1 >= f2
    return np.where(better, x1, x2), np.where(better, f1, f2)


def _orthonormal_partner(U: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Component of W orthogonal to U, normalized; rows that degenerate get
    a deterministic fallback axis."""
    dot = np.einsum("...d,...d->...", W, U)
    P = W - dot[..., None] * U
    nrm = np.linalg.norm(P, axis=-1)
    bad = nrm < 1e-9
    if np.any(bad):
        d = U.shape[-1]
        axes = np.eye(d)
        idx = np.argmin(np.abs(U), axis=-1)  # axis least aligned with U
        fallback = axes[idx]
        dot_f = np.einsum("...d,...d->...", fallback, U)
        Pf = fallback - dot_f[..., None] * U
        P = np.where(bad[..., None], Pf, P)
        nrm = np.linalg.norm(P, axis=-1)
        nrm[nrm < 1e-30] = 1.0
    return P / nrm[..., None]


def _outlyingness_core(
    xs: np.ndarray,
    dataset: Dataset,
    budget: int,
    seed: RngSeed,
    extra_directions: np.ndarray | None,
    want_directions: bool,
):
    """Lower bound of sup_u |u.x - Med| / MAD for a batch of points.

    Covering-grid maximum refined by golden-section search around the best
    candidates (on the angle for d = 2; on 2-plane slices through the
    incumbent for d >= 3).
    """
    n, d = dataset.n, dataset.dim
    m = xs.shape[0]
    U, med, madv = _proj_context(dataset, budget, seed)
    evals = budget

    if extra_directions is not None and len(extra_directions):
        E = np.atleast_2d(np.asarray(extra_directions, dtype=float))
        PE = E @ dataset.as_array().T
        med_e, mad_e = univariate.med_mad_rows(PE)
        _check_mads(mad_e, dataset)
        U = np.vstack([U, E])
        med = np.concatenate([med, med_e])
        madv = np.concatenate([madv, mad_e])
        evals += E.shape[0]

    ratios = np.abs(xs @ U.T - med) / madv  # (m, B)
    best_val = ratios.max(axis=1)
    best_dir = U[np.argmax(ratios, axis=1)] if want_directions else None

    if d == 2:
        # candidates = the strongest LOCAL maxima over the circular angle
        # grid (one per basin), so refinement explores distinct basins
        # instead of 8 neighbors of the single tallest peak
        grid = ratios[:, :budget]  # extra directions are appended after the grid
        is_peak = (grid >= np.roll(grid, 1, axis=1)) & (grid >= np.roll(grid, -1, axis=1))
        scored = np.where(is_peak, grid, -np.inf)
        ncand = min(_REFINE_CANDIDATES, budget)
        cand = np.argpartition(-scored, ncand - 1, axis=1)[:, :ncand]  # (m, C)
        theta_c = np.arctan2(U[cand, 1], U[cand, 0])
        half = np.pi / budget
        ang, val = _golden_max(
            lambda th: _ratio_for_angles(th, xs, dataset),
            theta_c - half,
            theta_c + half,
            _GOLDEN_ITERS,
        )
        evals += ncand * (_GOLDEN_ITERS + 2)
        flat = np.argmax(val, axis=1)
        val_best = val[np.arange(m), flat]
        improve = val_best > best_val
        best_val = np.where(improve, val_best, best_val)
        if want_directions:
            a = ang[np.arange(m), flat]
            refined = np.column_stack([np.cos(a), np.sin(a)])
            best_dir = np.where(improve[:, None], refined, best_dir)
    elif d >= 3:
        ncand = min(_REFINE_CANDIDATES, U.shape[0])
        cand = np.argpartition(-ratios, ncand - 1, axis=1)[:, :ncand]  # (m, C)
        V = U[cand]  # (m, C, d) incumbents
        pool = U[: max(2 * ncand, d)]
        for rnd in range(3):
            W = np.broadcast_to(pool[rnd % pool.shape[0]], V.shape)
            Wp = _orthonormal_partner(V, W)

            def slice_ratio(th, V=V, Wp=Wp):
                dirs = np.cos(th)[..., None] * V + np.sin(th)[..., None] * Wp
                return _ratio_for_vectors(dirs, xs, dataset)

            lo = np.full(V.shape[:2], -0.5 * np.pi / (rnd + 1))
            th, val = _golden_max(slice_ratio, lo, -lo, _GOLDEN_ITERS)
            evals += ncand * (_GOLDEN_ITERS + 2)
            V = np.cos(th)[..., None] * V + np.sin(th)[..., None] * Wp
            V /= np.linalg.norm(V, axis=-1, keepdims=True)
            flat = np.argmax(val, axis=1)
            val_best = val[np.arange(m), flat]
            improve = val_best > best_val
            best_val = np.where(improve, val_best, best_val)
            if want_directions:
                best_dir = np.where(improve[:, None], V[np.arange(m), flat], best_dir)

    return best_val, best_dir, evals


def outlyingness_batch(
    xs: np.ndarray,
    dataset: Dataset,
    budget: int | None = None,
    seed: RngSeed = RngSeed(0),
    extra_directions=None,
) -> np.ndarray:
    """Outlyingness for a (m, d) batch of query points."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    d = dataset.dim
    if xs.shape[1] != d:
        raise PreconditionError("query dimension mismatch")
    _require_mad_positive(dataset)
    if d == 1:
        vals = dataset.as_array()[:, 0]
        med = univariate.median(vals)
        madv = univariate.mad(vals)
        if madv <= _MAD_RTOL * dataset.scale:
            raise DegenerateScaleError("MAD of the sample is zero")
        return np.abs(xs[:, 0] - med) / madv
    b = _default_budget(budget, d)
    val, _, _ = _outlyingness_core(xs, dataset, b, seed, extra_directions, False)
    return val


def outlyingness(
    x,
    dataset: Dataset,
    budget: int | None = None,
    seed: RngSeed = RngSeed(0),
    extra_directions=None,
) -> float:
    """sup_u |u.x - Med(u.X)| / MAD(u.X), from below for d >= 2.

    ``extra_directions`` (unit rows) are appended to the covering set; this
    is how a caller can share the argmax directions between two affinely
    related problems.
    """
    return float(
        outlyingness_batch(_xarr(x, dataset.dim)[None, :], dataset, budget, seed, extra_directions)[0]
    )


def outlyingness_details(
    x, dataset: Dataset, budget: int | None = None, seed: RngSeed = RngSeed(0), extra_directions=None
) -> tuple[float, np.ndarray]:
    """(outlyingness, argbest unit direction); d >= 2 only."""
    d = dataset.dim
    if d < 2:
        raise PreconditionError("details are only meaningful for d >= 2")
    _require_mad_positive(dataset)
    b = _default_budget(budget, d)
    val, dirs, _ = _outlyingness_core(
        _xarr(x, d)[None, :], dataset, b, seed, extra_directions, True
    )
    return float(val[0]), dirs[0]


def projection_depth(
    x, dataset: Dataset, budget: int | None = None, seed: RngSeed = RngSeed(0), extra_directions=None
) -> DepthResult:
    """1 / (1 + outlyingness); an upper bound for d >= 2 (exact for d = 1)."""
    d = dataset.dim
    o = outlyingness(x, dataset, budget, seed, extra_directions)
    used = 0 if d == 1 else _default_budget(budget, d)
    return DepthResult(1.0 / (1.0 + o), exact=(d == 1), budget_used=used)


def projection_batch(
    xs: np.ndarray, dataset: Dataset, budget: int | None = None, seed: RngSeed = RngSeed(0)
) -> np.ndarray:
    return 1.0 / (1.0 + outlyingness_batch(xs, dataset, budget, seed))


# ---------------------------------------------------------------------------
# Halfspace depth


def _halfspace_min_count_2d(x: np.ndarray, X: np.ndarray) -> int:
    """Exact min over closed halfspaces with x on the boundary, via the
    one-sided limits at every critical normal direction."""
    n = X.shape[0]
    V = X - x
    r = np.hypot(V[:, 0], V[:, 1])
    scale = max(float(np.abs(X).max()), float(np.abs(x).max()), 1e-30)
    tol = 1e-12 * scale
    far = r > tol
    n_coincident = int(n - far.sum())
    if not np.any(far):
        return n
    W = V[far] / r[far, None]
    base = np.column_stack([-W[:, 1], W[:, 0]])  # normals of lines through x and X_i
    U = np.vstack([base, -base])

    best = n
    chunk = 2048
    for s in range(0, U.shape[0], chunk):
        Ub = U[s : s + chunk]
        S = Ub @ V.T                                  # (c, n)
        T = np.column_stack([-Ub[:, 1], Ub[:, 0]]) @ V.T
        neg = S < -tol
        bnd = np.abs(S) <= tol
        bnd[:, ~far] = False  # coincident points are handled additively
        cnt_plus = neg.sum(axis=1) + (bnd & (T < 0)).sum(axis=1) + n_coincident
        cnt_minus = neg.sum(axis=1) + (bnd & (T > 0)).sum(axis=1) + n_coincident
        best = min(best, int(cnt_plus.min()), int(cnt_minus.min()))
    return best


def _halfspace_value(
    x: np.ndarray, dataset: Dataset, budget: int | None, seed: RngSeed
) -> tuple[float, bool, int]:
    arr = dataset.as_array()
    n, d = arr.shape
    if d == 1:
        le = int((arr[:, 0] <= x[0]).sum())
        ge = int((arr[:, 0] >= x[0]).sum())
        return min(le, ge) / n, True, 0
    if d == 2:
        return _halfspace_min_count_2d(x, arr) / n, True, 2 * n
    b = _default_budget(budget, d)
    U = unit_vectors(d, b, seed)
    proj = U @ (arr - x).T  # (b, n)
    tol = 1e-12 * dataset.scale
    cnt_le = (proj <= tol).sum(axis=1)
    cnt_ge = (proj >= -tol).sum(axis=1)
    return float(min(cnt_le.min(), cnt_ge.min())) / n, False, b


def halfspace_depth(
    x, dataset: Dataset, budget: int | None = None, seed: RngSeed = RngSeed(0)
) -> DepthResult:
    """Min fraction of data in a closed halfspace containing x.

    Exact for d <= 2 (critical-angle sweep with both-side perturbation);
    sampled upper bound for d >= 3.
    """
    v, exact, used = _halfspace_value(_xarr(x, dataset.dim), dataset, budget, seed)
    return DepthResult(v, exact=exact, budget_used=used)


def halfspace_batch(
    xs: np.ndarray, dataset: Dataset, budget: int | None = None, seed: RngSeed = RngSeed(0)
) -> np.ndarray:
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    return np.array([_halfspace_value(x, dataset, budget, seed)[0] for x in xs])


# ---------------------------------------------------------------------------
# Zonoid depth


def _zonoid_value(x: np.ndarray, dataset: Dataset) -> float:
    if not geometry.contains_point(dataset, x):
        return 0.0
    arr = dataset.as_array()
    n = arr.shape[0]
    # maximize sum(q) s.t. sum q_i (X_i - x) = 0, 0 <= q <= 1;
    # equivalent to the min-max-weight program via q = p / max_i p_i,
    # giving ZD = (sum q*) / n.
    prob = linprog.LpProblem(
        objective=-np.ones(n),
        eq_matrix=(arr - x).T,
        eq_rhs=np.zeros(dataset.dim),
        lower=np.zeros(n),
        upper=np.ones(n),
    )
    sol = linprog.solve_lp(prob)
    if sol.status is not linprog.LpStatus.OPTIMAL:
        raise SolverError(f"zonoid LP ended {sol.status.value}")
    s = -sol.value
    return min(max(s / n, 0.0), 1.0)


def zonoid_depth(x, dataset: Dataset) -> DepthResult:
    """Largest alpha with x a convex combination under weights <= 1/(n alpha)."""
    v = _zonoid_value(_xarr(x, dataset.dim), dataset)
    return DepthResult(v, exact=True, budget_used=0)


def zonoid_batch(xs: np.ndarray, dataset: Dataset) -> np.ndarray:
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    return np.array([_zonoid_value(x, dataset) for x in xs])


# ---------------------------------------------------------------------------
# Extended depths


def _require_strict_interior(dataset: Dataset, c: np.ndarray, what: str) -> None:
    d = dataset.dim
    if d == 1:
        arr = dataset.as_array()[:, 0]
        if not (float(arr.min()) < c[0] < float(arr.max())):
            raise PreconditionError(f"{what} must lie strictly inside the hull")
    elif d == 2:
        if geometry._interior_margin_2d(dataset, c) <= 0.0:
            raise PreconditionError(f"{what} must lie strictly inside the hull")
    else:
        if not geometry.contains_point(dataset, c):
            raise PreconditionError(f"{what} must lie strictly inside the hull")


def _extended_values(
    xs: np.ndarray,
    dataset: Dataset,
    center: np.ndarray,
    inner,
) -> np.ndarray:
    """Case-split evaluation shared by EHD and EZD: ``inner`` evaluates the
    base depth on the inside batch; outside points get (lambda_v / lambda_x) / n."""
    n, d = dataset.n, dataset.dim
    inside = geometry.contains_points(dataset, xs)
    out = np.empty(xs.shape[0], dtype=float)
    if np.any(inside):
        out[inside] = inner(xs[inside])
    idx = np.flatnonzero(~inside)
    if idx.size:
        diff = xs[idx] - center
        lam_x = np.linalg.norm(diff, axis=1)
        dirs = diff / lam_x[:, None]
        if d == 2:
            lam_v = geometry.ray_exits(dataset, center, dirs)
        elif d == 1:
            arr = dataset.as_array()[:, 0]
            lo, hi = float(arr.min()), float(arr.max())
            lam_v = np.where(dirs[:, 0] > 0, hi - center[0], center[0] - lo)
        else:
            lam_v = np.array([geometry._ray_exit_lp(dataset, center, u) for u in dirs])
        out[idx] = (lam_v / lam_x) / n
    return out


def extended_halfspace_depth(
    x, dataset: Dataset, median, budget: int | None = None, seed: RngSeed = RngSeed(0)
) -> DepthResult:
    """Halfspace depth inside the hull, boundary-distance ratio over n outside.

    ``median`` is the halfspace (Tukey) median, the similarity center of the
    outside continuation; it must lie strictly inside the hull.
    """
    d = dataset.dim
    cen = _xarr(median, d)
    _require_strict_interior(dataset, cen, "halfspace median")
    xq = _xarr(x, d)
    v = float(
        _extended_values(
            xq[None, :], dataset, cen, lambda b: halfspace_batch(b, dataset, budget, seed)
        )[0]
    )
    exact = d <= 2 or not geometry.contains_point(dataset, xq)
    used = 0 if d <= 2 else _default_budget(budget, d)
    return DepthResult(v, exact=exact, budget_used=used)


def extended_halfspace_batch(
    xs: np.ndarray,
    dataset: Dataset,
    median,
    budget: int | None = None,
    seed: RngSeed = RngSeed(0),
) -> np.ndarray:
    cen = _xarr(median, dataset.dim)
    _require_strict_interior(dataset, cen, "halfspace median")
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    return _extended_values(xs, dataset, cen, lambda b: halfspace_batch(b, dataset, budget, seed))


def extended_zonoid_depth(x, dataset: Dataset) -> DepthResult:
    """Zonoid depth inside the hull, boundary ratio about the sample mean outside."""
    d = dataset.dim
    mean = dataset.as_array().mean(axis=0)
    _require_strict_interior(dataset, mean, "sample mean")
    v = float(
        _extended_values(
            _xarr(x, d)[None, :], dataset, mean, lambda b: zonoid_batch(b, dataset)
        )[0]
    )
    return DepthResult(v, exact=True, budget_used=0)


def extended_zonoid_batch(xs: np.ndarray, dataset: Dataset) -> np.ndarray:
    mean = dataset.as_array().mean(axis=0)
    _require_strict_interior(dataset, mean, "sample mean")
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    return _extended_values(xs, dataset, mean, lambda b: zonoid_batch(b, dataset))


# ---------------------------------------------------------------------------
# Dispatch


def evaluate(method: DepthMethod, x, dataset: Dataset, center=None) -> DepthResult:
    """Evaluate one depth method; ``center`` is required for ExtendedHalfspace."""
    t = method.tag
    if t is DepthTag.MAHALANOBIS:
        return mahalanobis_depth(x, dataset)
    if t is DepthTag.PROJECTION:
        return projection_depth(x, dataset, method.budget, method.seed)
    if t is DepthTag.HALFSPACE:
        return halfspace_depth(x, dataset, method.budget, method.seed)
    if t is DepthTag.ZONOID:
        return zonoid_depth(x, dataset)
    if t is DepthTag.EXTENDED_HALFSPACE:
        if center is None:
            raise PreconditionError("ExtendedHalfspace needs the halfspace median as center")
        return extended_halfspace_depth(x, dataset, center, method.budget, method.seed)
    if t is DepthTag.EXTENDED_ZONOID:
        return extended_zonoid_depth(x, dataset)
    raise PreconditionError(f"unknown depth method {t}")


def evaluate_batch(method: DepthMethod, xs: np.ndarray, dataset: Dataset, center=None) -> np.ndarray:
    """Vectorized depth values for a (m, d) batch (no exactness metadata)."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    t = method.tag
    if t is DepthTag.MAHALANOBIS:
        return mahalanobis_batch(xs, dataset)
    if t is DepthTag.PROJECTION:
        return projection_batch(xs, dataset, method.budget, method.seed)
    if t is DepthTag.HALFSPACE:
        return halfspace_batch(xs, dataset, method.budget, method.seed)
    if t is DepthTag.ZONOID:
        return zonoid_batch(xs, dataset)
    if t is DepthTag.EXTENDED_HALFSPACE:
        if center is None:
            raise PreconditionError("ExtendedHalfspace needs the halfspace median as center")
        return extended_halfspace_batch(xs, dataset, center, method.budget, method.seed)
    if t is DepthTag.EXTENDED_ZONOID:
        return extended_zonoid_batch(xs, dataset)
    raise PreconditionError(f"unknown depth method {t}")
