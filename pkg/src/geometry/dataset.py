import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from src.utils.errors import InsufficientPointsError

logger = logging.getLogger(__name__)


class SamplePoint(NamedTuple):
    # One sample: a D-dimensional position and its scalar value.
    position: np.ndarray
    value: float


def as_positions(positions, dimension=None):
    # Coerce positions to an (N, D) float array.
    arr = np.asarray(positions, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if dimension in (None, 1) else arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"positions must be 1D or 2D, got shape {arr.shape}")
    if dimension is not None and arr.shape[1] != dimension:
        raise ValueError(
            f"positions have dimension {arr.shape[1]}, expected {dimension}"
        )
    return arr


def as_query(position, dimension):
    # Coerce a single query position to a length-D vector.
    arr = np.asarray(position, dtype=float).reshape(-1)
    if arr.shape[0] != dimension:
        raise ValueError(
            f"query has dimension {arr.shape[0]}, expected {dimension}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("query position must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class Dataset:
    # Immutable scattered data set {<x_i, y_i>}, positions stored (N, D).
    positions: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        positions = as_positions(self.positions)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if positions.shape[0] < 1:
            raise InsufficientPointsError("a dataset needs at least one point")
        if positions.shape[1] < 1:
            raise ValueError("dataset dimension must be at least 1")
        if values.shape[0] != positions.shape[0]:
            raise ValueError(
                f"{positions.shape[0]} positions but {values.shape[0]} values"
            )
        if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(values))):
            raise ValueError("dataset positions and values must be finite")
        positions = positions.copy()
        values = values.copy()
        positions.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_points(cls, points):
        # Build from an iterable of SamplePoint or (position, value) pairs.
        points = list(points)
        if not points:
            raise InsufficientPointsError("a dataset needs at least one point")
        dims = {np.atleast_1d(np.asarray(p[0], dtype=float)).shape[0] for p in points}
        if len(dims) != 1:
            raise ValueError(f"points have mixed dimensions {sorted(dims)}")
        positions = np.array(
            [np.atleast_1d(np.asarray(p[0], dtype=float)) for p in points]
        )
        values = np.array([float(p[1]) for p in points])
        return cls(positions, values)

    @property
    def dimension(self):
        return self.positions.shape[1]

    def __len__(self):
        return self.positions.shape[0]

    def __getitem__(self, i):
        return SamplePoint(self.positions[i], float(self.values[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def with_values(self, values):
        return Dataset(self.positions, values)

    def translated(self, offset):
        offset = as_query(offset, self.dimension)
        return Dataset(self.positions + offset, self.values)

    def bounding_box(self):
        return self.positions.min(axis=0), self.positions.max(axis=0)
