import unittest
import sys
import os

# Add parent directory to path for module imports
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import numpy as np

from src.geometry import Dataset
from src.metrics import (
    CurvePoints,
    ErrorReport,
    curvature_error,
    distance_error,
    second_difference,
)
from src.utils.errors import DuplicateAbscissaError, NotInteriorError


class TestCurvatureError(unittest.TestCase):
    # Sum of absolute second differences over interior points

    def test_affine_curve_has_zero_curvature(self):
        x = np.arange(10.0)
        self.assertEqual(curvature_error(CurvePoints(x, 3.0 * x + 2.0)), 0.0)

    def test_parabola(self):
        x = np.linspace(-1, 1, 101)
        self.assertAlmostEqual(curvature_error(CurvePoints(x, x ** 2)), 2.0 * 99, delta=1e-7)

    def test_single_peak(self):
        curve = CurvePoints([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
        self.assertEqual(second_difference(curve, 1), -2.0)
        self.assertEqual(curvature_error(curve), 2.0)

    def test_zigzag(self):
        curve = CurvePoints(np.arange(5.0), [0.0, 1.0, 0.0, 1.0, 0.0])
        self.assertEqual(curvature_error(curve), 6.0)

    def test_index_space_ignores_spacing(self):
        x = np.array([0.0, 0.5, 1.0])
        curve = CurvePoints(x, [0.0, 1.0, 0.0])
        self.assertEqual(curvature_error(curve), 8.0)
        self.assertEqual(curvature_error(curve, index_space=True), 2.0)
        self.assertEqual(second_difference(curve, 1, index_space=True), -2.0)

    def test_sorted_curve(self):
        curve = CurvePoints([2.0, 0.0, 1.0], [0.0, 0.0, 1.0]).sorted()
        np.testing.assert_array_equal(curve.positions[:, 0], [0.0, 1.0, 2.0])
        self.assertEqual(curvature_error(curve), 2.0)

    def test_errors(self):
        curve = CurvePoints([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
        for i in (0, 2, 5):
            with self.assertRaises(NotInteriorError):
                second_difference(curve, i)
        with self.assertRaises(NotInteriorError):
            curvature_error(CurvePoints([0.0, 1.0], [0.0, 1.0]))
        with self.assertRaises(DuplicateAbscissaError):
            curvature_error(CurvePoints([0.0, 1.0, 1.0], [0.0, 1.0, 2.0]))
        with self.assertRaises(DuplicateAbscissaError):
            second_difference(CurvePoints([0.0, 0.0, 1.0], [0.0, 1.0, 2.0]), 1)
        with self.assertRaises(ValueError):
            curvature_error(CurvePoints([0.0, 2.0, 1.0], [0.0, 1.0, 2.0]))
        with self.assertRaises(ValueError):
            curvature_error(CurvePoints(np.zeros((3, 2)), np.zeros(3)))

    def test_non_negative_on_random_curves(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            x = np.sort(rng.uniform(size=30)) + np.arange(30)
            self.assertGreaterEqual(curvature_error(CurvePoints(x, rng.normal(size=30))), 0.0)


class TestDistanceError(unittest.TestCase):
    # Nearest graph-space distance to the noiseless reference

    def test_reference_example(self):
        approx = CurvePoints([0.0, 1.0], [0.0, 1.0])
        reference = CurvePoints([0.0, 1.0, 2.0], [1.0, 1.0, 0.0])
        self.assertAlmostEqual(distance_error(approx, reference), 1.0, places=15)

    def test_identical_curves(self):
        x = np.linspace(0, 1, 50)
        curve = CurvePoints(x, np.sin(x))
        self.assertEqual(distance_error(curve, curve), 0.0)

    def test_vertical_shift_is_bounded(self):
        x = np.linspace(-1, 1, 200)
        reference = CurvePoints(x, np.cos(3 * x))
        for shift in (0.01, 0.1, 1.0):
            approx = CurvePoints(x, np.cos(3 * x) + shift)
            self.assertLessEqual(distance_error(approx, reference), 200 * shift + 1e-9)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(77)
        for dimension in (1, 2):
            reference = CurvePoints(rng.uniform(size=(150, dimension)), rng.normal(size=150))
            approx = CurvePoints(rng.uniform(size=(40, dimension)), rng.normal(size=40))
            targets = reference.graph_points()
            expected = sum(
                np.min(np.sqrt(np.sum((targets - p) ** 2, axis=1)))
                for p in approx.graph_points()
            )
            self.assertAlmostEqual(distance_error(approx, reference), expected, delta=1e-10)

    def test_adding_points_never_decreases(self):
        rng = np.random.default_rng(3)
        reference = CurvePoints(np.linspace(0, 1, 80), rng.normal(size=80))
        positions = rng.uniform(size=30)
        values = rng.normal(size=30)
        partial = distance_error(CurvePoints(positions[:20], values[:20]), reference)
        full = distance_error(CurvePoints(positions, values), reference)
        self.assertGreaterEqual(full, partial)

    def test_from_dataset(self):
        dataset = Dataset([0.0, 1.0], [2.0, 3.0])
        curve = CurvePoints.from_dataset(dataset)
        np.testing.assert_array_equal(curve.graph_points(), [[0.0, 2.0], [1.0, 3.0]])

    def test_invalid_inputs(self):
        curve = CurvePoints([0.0, 1.0], [0.0, 1.0])
        with self.assertRaises(ValueError):
            distance_error(curve, CurvePoints(np.zeros((2, 2)), [0.0, 1.0]))
        with self.assertRaises(ValueError):
            distance_error(CurvePoints(np.zeros((0, 1)), []), curve)
        with self.assertRaises(ValueError):
            CurvePoints([0.0, 1.0], [1.0])


class TestErrorReport(unittest.TestCase):
    # Per-method result row

    def test_optional_distance(self):
        report = ErrorReport("lowess:d=1,k=10", 10, 0.5, None)
        self.assertIsNone(report.distance)

    def test_rejects_negative_or_non_finite(self):
        with self.assertRaises(ValueError):
            ErrorReport("lowess", 10, -1.0, 0.0)
        with self.assertRaises(ValueError):
            ErrorReport("lowess", 10, 0.0, np.nan)


if __name__ == '__main__':
    unittest.main()
