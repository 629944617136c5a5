"""
Quality metrics of a smoothed curve.

E_c sums the absolute discrete second differences over interior samples
(lower is smoother). E_d sums, over every smoothed point, the Euclidean
distance in graph space (position + value) to the nearest point of the
noiseless reference (lower is closer to the ground truth).
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.geometry import Dataset, build_index
from src.geometry.dataset import as_positions
from src.utils.errors import DuplicateAbscissaError, NotInteriorError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CurvePoints:
    positions: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        positions = as_positions(self.positions)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if positions.shape[0] != values.shape[0]:
            raise ValueError(
                f"{positions.shape[0]} positions but {values.shape[0]} values"
            )
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_dataset(cls, dataset: Dataset):
        return cls(dataset.positions, dataset.values)

    def __len__(self):
        return self.values.shape[0]

    @property
    def dimension(self):
        return self.positions.shape[1]

    def graph_points(self):
        # Embed in (D + 1)-dimensional graph space.
        return np.column_stack([self.positions, self.values])

    def sorted(self):
        # Same points ordered by abscissa (1D only).
        order = np.argsort(self._abscissae(), kind="stable")
        return CurvePoints(self.positions[order], self.values[order])

    def _abscissae(self):
        if self.dimension != 1:
            raise ValueError("curvature is defined for 1D curves only")
        return self.positions[:, 0]


@dataclass(frozen=True)
class ErrorReport:
    method: str
    param: int
    curvature: Optional[float]
    distance: Optional[float]

    def __post_init__(self):
        for name in ("curvature", "distance"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value >= 0):
                raise ValueError(f"{name} error must be finite and >= 0, got {value}")


def _spacings(x):
    gaps = np.diff(x)
    if np.any(gaps == 0):
        i = int(np.flatnonzero(gaps == 0)[0])
        raise DuplicateAbscissaError(f"x[{i}] == x[{i + 1}] == {x[i]}")
    if np.any(gaps < 0):
        raise ValueError("curve abscissae must be strictly increasing")
    return gaps


def second_difference(curve: CurvePoints, i: int, index_space: bool = False) -> float:
    # (f[i+1] - 2 f[i] + f[i-1]) / ((x[i+1] - x[i]) (x[i] - x[i-1])).
    x = curve._abscissae()
    n = x.shape[0]
    if i < 1 or i > n - 2:
        raise NotInteriorError(f"index {i} of a {n}-point curve")
    f = curve.values
    numerator = f[i + 1] - 2.0 * f[i] + f[i - 1]
    if index_space:
        return float(numerator)
    right, left = x[i + 1] - x[i], x[i] - x[i - 1]
    if right == 0 or left == 0:
        raise DuplicateAbscissaError(f"around index {i}")
    return float(numerator / (right * left))


def curvature_error(curve: CurvePoints, index_space: bool = False) -> float:
    # Sum of |second difference| over the interior points.
    x = curve._abscissae()
    if x.shape[0] < 3:
        raise NotInteriorError(f"a {x.shape[0]}-point curve has no interior")
    f = curve.values
    numerators = f[2:] - 2.0 * f[1:-1] + f[:-2]
    if index_space:
        return float(np.sum(np.abs(numerators)))
    gaps = _spacings(x)
    return float(np.sum(np.abs(numerators / (gaps[1:] * gaps[:-1]))))


def distance_error(approx: CurvePoints, reference: CurvePoints) -> float:
    # Sum over approximated points of the distance to the nearest reference point.
    if len(approx) == 0 or len(reference) == 0:
        raise ValueError("both curves must be non-empty")
    if approx.dimension != reference.dimension:
        raise ValueError(
            f"curve dimensions differ: {approx.dimension} vs {reference.dimension}"
        )
    targets = reference.graph_points()
    index = build_index(Dataset(targets, np.zeros(targets.shape[0])))
    total = 0.0
    for p in approx.graph_points():
        total += index.query(p, 1).d_max
    return float(total)
