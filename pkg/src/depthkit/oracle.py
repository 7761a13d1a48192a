"""Independent brute-force references for the depth engines.

These are used by the test suite and by the CLI audit command. They never
call the engines they certify: halfspace enumeration and the projection
grid are self-contained, and the zonoid oracle touches only the LP
feasibility routine (not the optimizing program the engine solves). Each
oracle is exact or a one-sided bound with a stated direction of bias.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linprog
from .core import Dataset, Point
from .errors import PreconditionError

__all__ = [
    "OracleBudget",
    "halfspace_bruteforce_2d",
    "projection_grid_oracle",
    "zonoid_bisection_oracle",
]


@dataclass(frozen=True)
class OracleBudget:
    """Resolution/tolerance bundle for audit runs (grid >= 1000 to certify)."""

    grid: int = 10_000
    tol: float = 1e-6


def _point_array(x, d: int) -> np.ndarray:
    arr = x.as_array() if isinstance(x, Point) else np.asarray(x, dtype=float)
    if arr.shape != (d,):
        raise PreconditionError(f"query point has shape {arr.shape}, expected ({d},)")
    return arr


def halfspace_bruteforce_2d(x, dataset: Dataset) -> float:
    """Exact 2-D halfspace depth by enumerating every candidate normal.

    Candidates: normals of lines through x and each data point AND through
    each data-point pair, both signs; each is evaluated as both one-sided
    perturbation limits, which realizes the closed-halfspace infimum.
    """
    if dataset.dim != 2:
        raise PreconditionError("halfspace_bruteforce_2d needs d = 2")
    X = dataset.as_array()
    n = X.shape[0]
    xq = _point_array(x, 2)
    V = X - xq
    scale = max(float(np.abs(X).max()), float(np.abs(xq).max()), 1e-30)
    tol = 1e-12 * scale

    cand = [V]
    ii, jj = np.triu_indices(n, k=1)
    cand.append(X[jj] - X[ii])
    W = np.vstack(cand)
    lens = np.hypot(W[:, 0], W[:, 1])
    W = W[lens > tol] / lens[lens > tol, None]
    if W.shape[0] == 0:
        return 1.0  # every point coincides with the query
    normals = np.column_stack([-W[:, 1], W[:, 0]])
    U = np.vstack([normals, -normals])

    r = np.hypot(V[:, 0], V[:, 1])
    n_coincident = int((r <= tol).sum())
    mask_far = r > tol

    best = n
    chunk = 4096
    for s in range(0, U.shape[0], chunk):
        Ub = U[s : s + chunk]
        S = Ub @ V.T
        T = np.column_stack([-Ub[:, 1], Ub[:, 0]]) @ V.T
        neg = S < -tol
        bnd = (np.abs(S) <= tol) & mask_far
        plus = neg.sum(axis=1) + (bnd & (T < 0)).sum(axis=1) + n_coincident
        minus = neg.sum(axis=1) + (bnd & (T > 0)).sum(axis=1) + n_coincident
        best = min(best, int(plus.min()), int(minus.min()))
    return best / n


def projection_grid_oracle(x, dataset: Dataset, grid: int) -> float:
    """Max Med/MAD ratio over ``grid`` equally spaced angles in [0, pi).

    A certified lower bound of the outlyingness supremum with angular
    resolution pi/grid; doubling the grid never decreases the result.
    """
    if dataset.dim != 2:
        raise PreconditionError("projection_grid_oracle needs d = 2")
    if grid < 1:
        raise PreconditionError("grid must be >= 1")
    X = dataset.as_array()
    xq = _point_array(x, 2)
    best = 0.0
    chunk = 65_536
    n = X.shape[0]
    lo = (n + 1) // 2 - 1
    hi = (n + 2) // 2 - 1
    for s in range(0, grid, chunk):
        theta = np.pi * np.arange(s, min(s + chunk, grid)) / grid
        ct, st = np.cos(theta), np.sin(theta)
        proj = np.sort(ct[:, None] * X[:, 0] + st[:, None] * X[:, 1], axis=1)
        med = 0.5 * (proj[:, lo] + proj[:, hi])
        dev = np.sort(np.abs((ct[:, None] * X[:, 0] + st[:, None] * X[:, 1]) - med[:, None]), axis=1)
        madv = 0.5 * (dev[:, lo] + dev[:, hi])
        num = np.abs(ct * xq[0] + st * xq[1] - med)
        best = max(best, float((num / madv).max()))
    return best


def _membership_feasible(x: np.ndarray, X: np.ndarray, alpha: float | None) -> bool:
    """Feasibility of sum p_i X_i = x, sum p = 1, 0 <= n p_i <= min(n, 1/alpha)."""
    n = X.shape[0]
    upper = np.ones(n) if alpha is None else np.full(n, min(1.0, 1.0 / (n * alpha)))
    prob = linprog.LpProblem(
        objective=np.zeros(n),
        eq_matrix=np.vstack([X.T, np.ones((1, n))]),
        eq_rhs=np.concatenate([x, [1.0]]),
        lower=np.zeros(n),
        upper=upper,
    )
    return linprog.feasible(prob)


def zonoid_bisection_oracle(x, dataset: Dataset, tol: float = 1e-6) -> float:
    """sup of feasible alpha by bisection over pure feasibility problems.

    Points outside the hull are 0 by definition (no bisection). Returns the
    largest alpha proven feasible, within ``tol``.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    X = dataset.as_array()
    xq = _point_array(x, dataset.dim)
    if not _membership_feasible(xq, X, None):
        return 0.0
    if _membership_feasible(xq, X, 1.0):
        return 1.0
    n = X.shape[0]
    lo, hi = 1.0 / n, 1.0  # alpha = 1/n is always feasible inside the hull
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _membership_feasible(xq, X, mid):
            lo = mid
        else:
            hi = mid
    return lo
