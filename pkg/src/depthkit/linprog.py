"""A small dense bounded-variable linear-program solver.

Solves   minimize c.x   s.t.  A x = b,  lower <= x <= upper
with a two-phase simplex. Bland's rule (smallest index for both the
entering and the leaving variable) guarantees termination; the basis is
re-solved from scratch every iteration, which is cheap at the problem
sizes used here (a handful of rows, up to a few thousand columns) and
removes any factorization drift. Suspicious results raise rather than
returning silently wrong answers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, SolverError

__all__ = ["LpProblem", "LpSolution", "LpStatus", "solve_lp", "feasible"]

PIVOT_RTOL = 1e-10
FEAS_RTOL = 1e-9

_BASIC, _AT_LOWER, _AT_UPPER = 0, 1, 2


class LpStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpProblem:
    """minimize objective . x  s.t.  eq_matrix x = eq_rhs, lower <= x <= upper."""

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __init__(self, objective, eq_matrix, eq_rhs, lower, upper):
        c = np.atleast_1d(np.asarray(objective, dtype=float))
        A = np.asarray(eq_matrix, dtype=float)
        if A.size == 0:
            A = A.reshape(0, c.shape[0])
        A = np.atleast_2d(A)
        b = np.atleast_1d(np.asarray(eq_rhs, dtype=float))
        lo = np.atleast_1d(np.asarray(lower, dtype=float))
        up = np.atleast_1d(np.asarray(upper, dtype=float))
        m = c.shape[0]
        if A.shape[1] != m or lo.shape[0] != m or up.shape[0] != m:
            raise PreconditionError(
                f"inconsistent LP shapes: c has {m} vars, A is {A.shape}, "
                f"bounds {lo.shape[0]}/{up.shape[0]}"
            )
        if A.shape[0] != b.shape[0]:
            raise PreconditionError("eq_matrix and eq_rhs row counts differ")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
            raise PreconditionError("LP data must be finite")
        if not np.all(np.isfinite(lo)):
            raise PreconditionError("lower bounds must be finite")
        if np.any(np.isnan(up)):
            raise PreconditionError("upper bounds must not be NaN")
        if np.any(lo > up):
            raise PreconditionError("lower > upper for some variable")
        for name, arr in (("objective", c), ("eq_matrix", A), ("eq_rhs", b),
                          ("lower", lo), ("upper", up)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]

    @property
    def n_rows(self) -> int:
        return self.eq_matrix.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    value: float
    solution: np.ndarray


class _Simplex:
    """Working state for one solve; instances are single-use."""

    def __init__(self, problem: LpProblem, tol: float, piv_boost: float = 1.0):
        if tol <= 0:
            raise PreconditionError("tol must be positive")
        A, b = problem.eq_matrix, problem.eq_rhs
        self.k = A.shape[0]
        self.m = A.shape[1]
        scale = max(1.0, float(np.abs(A).max()) if A.size else 0.0,
                    float(np.abs(b).max()) if b.size else 0.0)
        self.piv_tol = PIVOT_RTOL * scale * piv_boost
        self.feas_tol = tol * scale
        k, m = self.k, self.m

        # start all structural variables at their (finite) lower bounds
        x = problem.lower.copy()
        r = b - A @ x if k else np.zeros(0)
        signs = np.where(r < 0, -1.0, 1.0)

        self.A = np.hstack([A, np.diag(signs)]) if k else A.copy()
        self.lower = np.concatenate([problem.lower, np.zeros(k)])
        self.upper = np.concatenate([problem.upper, np.full(k, np.inf)])
        self.x = np.concatenate([x, np.abs(r)])
        self.state = np.full(m + k, _AT_LOWER, dtype=np.int8)
        self.state[m:] = _BASIC
        self.basis = list(range(m, m + k))
        self.b = b

    def _refresh_basics(self, B: np.ndarray) -> None:
        if not self.k:
            return
        nb = self.state != _BASIC
        rhs = self.b - self.A[:, nb] @ self.x[nb]
        try:
            self.x[self.basis] = np.linalg.solve(B, rhs)
        except np.linalg.LinAlgError as exc:
            raise SolverError(f"singular simplex basis: {exc}") from exc

    def minimize(self, c: np.ndarray, phase: int) -> LpStatus:
        k = self.k
        max_iter = 200 + 50 * (self.m + k)
        d_tol = max(self.piv_tol, 1e-12 * max(1.0, float(np.abs(c).max())))
        fixed = self.lower == self.upper

        for _ in range(max_iter):
            B = self.A[:, self.basis] if k else np.zeros((0, 0))
            self._refresh_basics(B)
            if k:
                try:
                    y = np.linalg.solve(B.T, c[self.basis])
                except np.linalg.LinAlgError as exc:
                    raise SolverError(f"singular simplex basis: {exc}") from exc
                d = c - self.A.T @ y
            else:
                d = c.copy()

            at_lo = (self.state == _AT_LOWER) & (d < -d_tol) & ~fixed
            at_up = (self.state == _AT_UPPER) & (d > d_tol) & ~fixed
            eligible = np.flatnonzero(at_lo | at_up)
            if eligible.size == 0:
                return LpStatus.OPTIMAL
            j = int(eligible[0])  # Bland: smallest index enters
            dirn = 1.0 if self.state[j] == _AT_LOWER else -1.0

            w = np.linalg.solve(B, self.A[:, j]) if k else np.zeros(0)
            step = np.inf
            leave_row = -1
            # own-bound flip limit
            own = self.upper[j] - self.lower[j]
            if np.isfinite(own):
                step = own
            coef = dirn * w
            for i in range(k):
                bi = self.basis[i]
                if coef[i] > self.piv_tol:
                    lim = (self.x[bi] - self.lower[bi]) / coef[i]
                elif coef[i] < -self.piv_tol:
                    if not np.isfinite(self.upper[bi]):
                        continue
                    lim = (self.upper[bi] - self.x[bi]) / (-coef[i])
                else:
                    continue
                lim = max(lim, 0.0)
                # Bland: among (near-)ties prefer the smallest variable index
                if lim < step - self.piv_tol or (
                    lim <= step + self.piv_tol
                    and leave_row >= 0
                    and bi < self.basis[leave_row]
                ):
                    step = lim
                    leave_row = i

            if not np.isfinite(step):
                if phase == 1:
                    raise SolverError("phase-1 objective unbounded; numerical failure")
                return LpStatus.UNBOUNDED

            self.x[j] += dirn * step
            if k and leave_row >= 0:
                self.x[self.basis] -= coef * step
                out = self.basis[leave_row]
                # snap the leaving variable exactly onto the bound it hit
                hit_lower = coef[leave_row] > 0
                self.x[out] = self.lower[out] if hit_lower else self.upper[out]
                self.state[out] = _AT_LOWER if hit_lower else _AT_UPPER
                self.basis[leave_row] = j
                self.state[j] = _BASIC
            else:
                # bound flip: j moves to its opposite bound, basis unchanged
                if k:
                    self.x[self.basis] -= coef * step
                self.state[j] = _AT_UPPER if dirn > 0 else _AT_LOWER
                self.x[j] = self.upper[j] if dirn > 0 else self.lower[j]

        raise SolverError("simplex iteration cap exceeded (possible cycling)")


def _phase1(problem: LpProblem, tol: float, piv_boost: float = 1.0) -> tuple[_Simplex, bool]:
    sx = _Simplex(problem, tol, piv_boost)
    art_cost = np.concatenate([np.zeros(sx.m), np.ones(sx.k)])
    status = sx.minimize(art_cost, phase=1)
    if status is not LpStatus.OPTIMAL:
        raise SolverError(f"phase 1 ended with {status}")
    infeas = float(sx.x[sx.m:].sum()) if sx.k else 0.0
    return sx, infeas <= sx.feas_tol


# Near-degenerate rows (a query point ~1e-9 off a hull facet) can bait the
# ratio test into a pivot element barely above the base tolerance, leaving
# an ill-conditioned basis. The retry ladder re-solves from scratch with a
# coarser pivot floor, deterministically.
_PIVOT_BOOSTS = (1.0, 1e4, 1e7)


def solve_lp(problem: LpProblem, tol: float = FEAS_RTOL) -> LpSolution:
    """Optimal basic solution of a feasible bounded problem.

    Returns status INFEASIBLE/UNBOUNDED where applicable; raises
    :class:`SolverError` on numerical failure (never a silent wrong answer).
    """
    last: SolverError | None = None
    for boost in _PIVOT_BOOSTS:
        try:
            return _solve_once(problem, tol, boost)
        except SolverError as exc:
            last = exc
    raise SolverError(f"simplex failed after pivot-tolerance retries: {last}") from last


def _solve_once(problem: LpProblem, tol: float, piv_boost: float) -> LpSolution:
    sx, ok = _phase1(problem, tol, piv_boost)
    if not ok:
        return LpSolution(LpStatus.INFEASIBLE, np.nan, np.array([]))
    # artificials are pinned at zero for phase 2 but may sit basic at 0
    sx.lower[sx.m:] = 0.0
    sx.upper[sx.m:] = 0.0
    cost = np.concatenate([problem.objective, np.zeros(sx.k)])
    status = sx.minimize(cost, phase=2)
    if status is LpStatus.UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, -np.inf, np.array([]))

    x = sx.x[: sx.m].copy()
    _audit(problem, x, max(sx.feas_tol, sx.piv_tol))
    return LpSolution(LpStatus.OPTIMAL, float(problem.objective @ x), x)


def feasible(problem: LpProblem, tol: float = FEAS_RTOL) -> bool:
    """Phase-1 only: is the constraint system consistent with the bounds?"""
    last: SolverError | None = None
    for boost in _PIVOT_BOOSTS:
        try:
            return _phase1(problem, tol, boost)[1]
        except SolverError as exc:
            last = exc
    raise SolverError(f"phase 1 failed after pivot-tolerance retries: {last}") from last


def _audit(problem: LpProblem, x: np.ndarray, feas_tol: float) -> None:
    if problem.n_rows:
        resid = float(np.abs(problem.eq_matrix @ x - problem.eq_rhs).max())
        if resid > 10 * feas_tol:
            raise SolverError(f"optimal point violates equalities by {resid:.3e}")
    if float((problem.lower - x).max(initial=0.0)) > 10 * feas_tol or float(
        (x - problem.upper).max(initial=0.0)
    ) > 10 * feas_tol:
        raise SolverError("optimal point violates variable bounds")
