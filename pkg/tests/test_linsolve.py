import unittest
import sys
import os

# Add parent directory to path for module imports
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import numpy as np

from src.linsolve import (
    solve_least_squares,
    solve_normal_system,
    solve_weighted_normal_equations,
    weighted_residual_sum,
)
from src.utils.errors import RankDeficientError


def cramer_solve(normal, rhs):
    # a_j = det(N with column j replaced by rhs) / det(N)
    det = np.linalg.det(normal)
    solution = np.empty(rhs.shape[0])
    for j in range(rhs.shape[0]):
        replaced = normal.copy()
        replaced[:, j] = rhs
        solution[j] = np.linalg.det(replaced) / det
    return solution


def random_system(rng, unknowns, rows):
    # Reasonably conditioned random system; the oracle is only as good as cond(N).
    while True:
        A = rng.uniform(-1, 1, size=(rows, unknowns))
        w = rng.uniform(0.1, 1.0, size=rows)
        b = rng.uniform(-1, 1, size=rows)
        normal = A.T @ (A * w[:, None])
        if np.linalg.cond(normal) < 1e4:
            return A, w, b, normal, (A * w[:, None]).T @ b


class TestWeightedNormalEquations(unittest.TestCase):
    # a = (A^T W A)^-1 A^T W b through the pivoted LDL^T path

    def test_identity_system(self):
        a = solve_weighted_normal_equations(np.eye(2), [1.0, 1.0], [3.0, 5.0])
        np.testing.assert_allclose(a, [3.0, 5.0], atol=1e-14)

    def test_consistent_line(self):
        A = [[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]]
        a = solve_weighted_normal_equations(A, [1.0, 1.0, 1.0], [0.0, 1.0, 2.0])
        np.testing.assert_allclose(a, [0.0, 1.0], atol=1e-14)

    def test_random_six_by_three_matches_cramer(self):
        rng = np.random.default_rng(63)
        A, w, b, normal, rhs = random_system(rng, 3, 6)
        a = solve_weighted_normal_equations(A, w, b)
        np.testing.assert_allclose(a, cramer_solve(normal, rhs), rtol=0, atol=1e-10)

    def test_cramer_oracle_and_residual_orthogonality(self):
        rng = np.random.default_rng(20240601)
        for trial in range(10000):
            unknowns = int(rng.integers(1, 5))
            rows = unknowns + int(rng.integers(0, 6))
            A, w, b, normal, rhs = random_system(rng, unknowns, rows)
            a = solve_weighted_normal_equations(A, w, b)
            expected = cramer_solve(normal, rhs)
            tolerance = 1e-10 * max(1.0, np.max(np.abs(expected)))
            self.assertTrue(
                np.all(np.abs(a - expected) <= tolerance),
                f"trial {trial}: {a} vs {expected}"
            )
            gradient = A.T @ (w * (b - A @ a))
            self.assertLessEqual(
                np.linalg.norm(gradient), 1e-8 * max(np.linalg.norm(rhs), 1e-300)
            )

    def test_zero_weight_row_changes_nothing(self):
        rng = np.random.default_rng(4)
        A, w, b, _, _ = random_system(rng, 3, 8)
        base = solve_weighted_normal_equations(A, w, b)
        extended = solve_weighted_normal_equations(
            np.vstack([A, [[5.0, -3.0, 2.0]]]), np.append(w, 0.0), np.append(b, 1e6)
        )
        np.testing.assert_allclose(extended, base, rtol=0, atol=1e-12)

    def test_uniform_weight_rescaling(self):
        rng = np.random.default_rng(8)
        A, w, b, _, _ = random_system(rng, 4, 10)
        base = solve_weighted_normal_equations(A, w, b)
        for factor in (1e-6, 0.3, 250.0):
            scaled = solve_weighted_normal_equations(A, w * factor, b)
            np.testing.assert_allclose(scaled, base, rtol=0, atol=1e-10)

    def test_rank_deficient_carries_effective_rank(self):
        A = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        with self.assertRaises(RankDeficientError) as ctx:
            solve_weighted_normal_equations(A, [1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        self.assertEqual(ctx.exception.rank, 1)
        self.assertIn("rank deficient", str(ctx.exception))

    def test_zero_column_is_rank_deficient(self):
        A = np.array([[1.0, 0.0, 1.0], [1.0, 0.0, 2.0], [1.0, 0.0, 3.0]])
        with self.assertRaises(RankDeficientError) as ctx:
            solve_weighted_normal_equations(A, [1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        self.assertEqual(ctx.exception.rank, 2)

    def test_zero_weights_leave_too_few_rows(self):
        A = [[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]]
        with self.assertRaises(RankDeficientError):
            solve_weighted_normal_equations(A, [1.0, 0.0, 0.0], [1.0, 2.0, 3.0])

    def test_invalid_inputs(self):
        with self.assertRaises(ValueError):
            solve_weighted_normal_equations([[1.0], [1.0]], [1.0, -1.0], [1.0, 2.0])
        with self.assertRaises(ValueError):
            solve_weighted_normal_equations([[1.0], [1.0]], [1.0], [1.0, 2.0])
        with self.assertRaises(ValueError):
            solve_weighted_normal_equations([[np.nan], [1.0]], [1.0, 1.0], [1.0, 2.0])

    def test_objective_at_solution(self):
        A = [[1.0], [1.0]]
        a = solve_weighted_normal_equations(A, [3.0, 1.0], [0.0, 4.0])
        self.assertAlmostEqual(a[0], 1.0, places=14)
        self.assertAlmostEqual(weighted_residual_sum(A, [3.0, 1.0], [0.0, 4.0], a), 12.0)


class TestLeastSquares(unittest.TestCase):
    # Unweighted special case

    def test_one_by_one(self):
        np.testing.assert_allclose(solve_least_squares([[2.0]], [6.0]), [3.0], atol=1e-15)

    def test_constant_column_gives_mean(self):
        eta = solve_least_squares([[1.0], [1.0], [1.0]], [1.0, 2.0, 3.0])
        np.testing.assert_allclose(eta, [2.0], atol=1e-14)

    def test_random_eight_by_four_matches_cramer(self):
        rng = np.random.default_rng(84)
        while True:
            A = rng.uniform(-1, 1, size=(8, 4))
            if np.linalg.cond(A.T @ A) < 1e4:
                break
        f = rng.uniform(-1, 1, size=8)
        eta = solve_least_squares(A, f)
        np.testing.assert_allclose(eta, cramer_solve(A.T @ A, A.T @ f), rtol=0, atol=1e-10)
        np.testing.assert_allclose(
            eta, solve_weighted_normal_equations(A, np.ones(8), f), rtol=0, atol=0
        )

    def test_normal_system_with_badly_scaled_columns(self):
        # Equilibration makes column scale irrelevant.
        A = np.column_stack([np.ones(5), 1e-6 * np.arange(5.0), 1e6 * np.arange(5.0) ** 2])
        truth = np.array([1.0, 2e6, 3e-6])
        a = solve_normal_system(A.T @ A, A.T @ (A @ truth))
        np.testing.assert_allclose(a, truth, rtol=1e-8)


if __name__ == '__main__':
    unittest.main()
