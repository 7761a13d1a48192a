import itertools

import numpy as np
import pytest

from depthkit.errors import PreconditionError
from depthkit.linprog import LpProblem, LpStatus, feasible, solve_lp


def box_problem(c, A, b, lo, hi):
    return LpProblem(np.asarray(c, float), np.asarray(A, float).reshape(len(b), -1)
                     if len(b) else np.zeros((0, len(c))),
                     np.asarray(b, float), np.asarray(lo, float), np.asarray(hi, float))


class TestSpecExamples:
    def test_maximize_x_on_unit_interval(self):
        sol = solve_lp(box_problem([-1.0], [], [], [0.0], [1.0]))
        assert sol.status is LpStatus.OPTIMAL
        assert sol.value == pytest.approx(-1.0, abs=1e-12)
        assert sol.solution[0] == pytest.approx(1.0, abs=1e-12)

    def test_min_max_weight_two_equal_points(self):
        # min t  s.t.  p1 + p2 = 1, p_i <= t (slack form): symmetry forces 1/2
        A = [[1, 1, 0, 0, 0], [1, 0, -1, 1, 0], [0, 1, -1, 0, 1]]
        prob = box_problem([0, 0, 1, 0, 0], A, [1, 0, 0],
                           [0] * 5, [1, 1, np.inf, np.inf, np.inf])
        sol = solve_lp(prob)
        assert sol.status is LpStatus.OPTIMAL
        assert sol.solution[2] == pytest.approx(0.5, abs=1e-9)

    def test_inconsistent_rhs_infeasible(self):
        prob = box_problem([0.0], [[1.0], [1.0]], [1.0, 2.0], [0.0], [np.inf])
        assert solve_lp(prob).status is LpStatus.INFEASIBLE


class TestFeasibility:
    def test_mean_in_hull(self):
        X = np.array([[0, 0], [1, 0], [0, 1]], float)
        A = np.vstack([X.T, np.ones((1, 3))])
        assert feasible(box_problem(np.zeros(3), A, [1 / 3, 1 / 3, 1],
                                    np.zeros(3), np.ones(3)))

    def test_outside_hull(self):
        X = np.array([[0, 0], [1, 0], [0, 1]], float)
        A = np.vstack([X.T, np.ones((1, 3))])
        assert not feasible(box_problem(np.zeros(3), A, [2, 2, 1],
                                        np.zeros(3), np.ones(3)))

    def test_vertex_in_hull(self):
        X = np.array([[0, 0], [1, 0], [0, 1]], float)
        A = np.vstack([X.T, np.ones((1, 3))])
        assert feasible(box_problem(np.zeros(3), A, [1, 0, 1],
                                    np.zeros(3), np.ones(3)))


def test_unbounded_detected():
    sol = solve_lp(box_problem([-1.0], [], [], [0.0], [np.inf]))
    assert sol.status is LpStatus.UNBOUNDED


def test_fixed_variables():
    # x fixed at 2, minimize x + y with y in [0, 3], x + y = 4
    prob = box_problem([1, 1], [[1, 1]], [4], [2, 0], [2, 3])
    sol = solve_lp(prob)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.solution == pytest.approx([2.0, 2.0], abs=1e-9)


def test_validation_errors():
    with pytest.raises(PreconditionError):
        LpProblem([1.0], [[1.0]], [1.0], [2.0], [1.0])  # lower > upper
    with pytest.raises(PreconditionError):
        LpProblem([1.0], [[1.0]], [1.0], [-np.inf], [1.0])  # infinite lower
    with pytest.raises(PreconditionError):
        solve_lp(box_problem([1.0], [], [], [0.0], [1.0]), tol=0.0)


def _enumerate_optimum(prob: LpProblem) -> float:
    """Brute force over every basis/bound pattern (tiny problems only)."""
    A, b, c = prob.eq_matrix, prob.eq_rhs, prob.objective
    k, m = A.shape
    lo, hi = prob.lower, prob.upper
    best = np.inf
    for basis in itertools.combinations(range(m), k):
        B = A[:, basis]
        if abs(np.linalg.det(B)) < 1e-10 if k else False:
            continue
        nonbasic = [j for j in range(m) if j not in basis]
        for pattern in itertools.product((0, 1), repeat=len(nonbasic)):
            x = np.empty(m)
            ok = True
            for j, p in zip(nonbasic, pattern):
                x[j] = lo[j] if p == 0 else hi[j]
                if not np.isfinite(x[j]):
                    ok = False
                    break
            if not ok:
                continue
            if k:
                try:
                    xb = np.linalg.solve(B, b - A[:, nonbasic] @ x[nonbasic])
                except np.linalg.LinAlgError:
                    continue
                x[list(basis)] = xb
            if np.all(x >= lo - 1e-9) and np.all(x <= hi + 1e-9):
                best = min(best, float(c @ x))
    return best


def test_against_vertex_enumeration_oracle():
    rng = np.random.default_rng(42)
    checked = 0
    for _ in range(120):
        k = int(rng.integers(1, 4))
        m = int(rng.integers(k + 1, 8))
        A = rng.normal(size=(k, m))
        c = rng.normal(size=m)
        lo = rng.uniform(-2, 0, size=m)
        hi = lo + rng.uniform(0.5, 3, size=m)
        x_feas = rng.uniform(lo, hi)
        b = A @ x_feas  # guarantees feasibility
        prob = LpProblem(c, A, b, lo, hi)
        sol = solve_lp(prob)
        assert sol.status is LpStatus.OPTIMAL
        ref = _enumerate_optimum(prob)
        assert sol.value == pytest.approx(ref, abs=1e-7)
        # audit invariant: independent dense objective re-evaluation
        assert sol.value == pytest.approx(float(c @ sol.solution), abs=1e-9)
        checked += 1
    assert checked == 120


def test_solution_feasibility_invariant():
    rng = np.random.default_rng(3)
    for _ in range(60):
        k = int(rng.integers(1, 5))
        m = int(rng.integers(k + 1, 30))
        A = rng.normal(size=(k, m))
        lo = np.zeros(m)
        hi = np.where(rng.random(m) < 0.3, np.inf, rng.uniform(0.5, 4, size=m))
        x_feas = rng.uniform(lo, np.where(np.isfinite(hi), hi, 3.0))
        prob = LpProblem(rng.normal(size=m), A, A @ x_feas, lo, hi)
        sol = solve_lp(prob)
        if sol.status is not LpStatus.OPTIMAL:
            continue
        scale = max(1.0, np.abs(A).max())
        assert np.abs(A @ sol.solution - prob.eq_rhs).max() <= 1e-8 * scale
        assert (sol.solution >= lo - 1e-8 * scale).all()
        assert (sol.solution <= hi + 1e-8 * scale).all()


def test_degenerate_bland_termination():
    # many ties at zero step: Bland must still terminate
    A = np.array([[1.0, 1.0, 1.0, 1.0], [1.0, -1.0, 1.0, -1.0]])
    prob = LpProblem([-1, -1, -1, -1], A, [0.0, 0.0], np.zeros(4), np.ones(4))
    sol = solve_lp(prob)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.value == pytest.approx(-2.0, abs=1e-9)
