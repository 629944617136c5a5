"""
Global compactly supported RBF approximation.

A single least-squares fit over all N samples with M centers on a
uniform grid and an optional (unshifted) polynomial tail:

    f(x) = sum_i lambda_i Phi(||x - c_i|| / rho) + P_d(x)

Models serialize to a small text format:

    rbf-model v1 D M d rho
    c_1 ... c_D lambda        (M lines)
    a_0 a_1 ...               (tail coefficients, empty when d = -1)
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist, pdist

from src.geometry import Dataset
from src.geometry.dataset import as_positions
from src.kernels import TRICUBE, KernelProfile, weight
from src.linsolve import solve_least_squares
from src.lowess.basis import basis_monomials
from src.utils.errors import (
    DegenerateNeighborhoodError,
    InsufficientPointsError,
    OutputError,
)

logger = logging.getLogger(__name__)

DEFAULT_SUPPORT_OVERLAP = 2.0
DEFAULT_TAIL_DEGREE = 1
FORMAT_HEADER = "rbf-model"
FORMAT_VERSION = "v1"


@dataclass(frozen=True, eq=False)
class GlobalRbfModel:
    centers: np.ndarray
    support_radius: float
    weights: np.ndarray
    tail: np.ndarray
    degree: Optional[int]
    kernel: KernelProfile = TRICUBE

    def __post_init__(self):
        centers = as_positions(self.centers)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        tail = np.asarray(self.tail, dtype=float).reshape(-1)
        if centers.shape[0] < 1:
            raise InsufficientPointsError("a model needs at least one center")
        if weights.shape[0] != centers.shape[0]:
            raise ValueError(
                f"{centers.shape[0]} centers but {weights.shape[0]} weights"
            )
        if not self.support_radius > 0:
            raise ValueError(f"support radius ({self.support_radius}) must be > 0")
        expected = 0 if self.degree is None else len(
            basis_monomials(centers.shape[1], self.degree)
        )
        if tail.shape[0] != expected:
            raise ValueError(
                f"tail has {tail.shape[0]} coefficients, expected {expected}"
            )
        for name, arr in (("centers", centers), ("weights", weights), ("tail", tail)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "support_radius", float(self.support_radius))

    @property
    def dimension(self):
        return self.centers.shape[1]

    def __len__(self):
        return self.centers.shape[0]

    def __call__(self, x):
        return evaluate_global(self, x)


def _axis_count(dimension, m):
    # Smallest per-axis count whose full grid holds at least m points.
    per_axis = max(1, int(round(m ** (1.0 / dimension))))
    while per_axis ** dimension < m:
        per_axis += 1
    while per_axis > 1 and (per_axis - 1) ** dimension >= m:
        per_axis -= 1
    return per_axis


def place_centers(dataset: Dataset, m: int) -> np.ndarray:
    # Exactly m centers over the bounding box; M = 1 -> midpoint. When m is
    # not a perfect D-th power, m evenly spaced rows of the next larger grid
    # (row-major order) are kept, first and last grid corners included.
    if int(m) != m or m < 1:
        raise ValueError(f"number of centers ({m}) must be a positive integer")
    m = int(m)
    lower, upper = dataset.bounding_box()
    if m == 1:
        return ((lower + upper) / 2.0).reshape(1, -1)
    per_axis = m if dataset.dimension == 1 else _axis_count(dataset.dimension, m)
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(lower, upper)]
    grid = np.meshgrid(*axes, indexing="ij")
    centers = np.column_stack([g.reshape(-1) for g in grid])
    if centers.shape[0] == m:
        return centers
    keep = np.floor(np.linspace(0, centers.shape[0] - 1, m) + 0.5).astype(int)
    logger.debug(
        f"{m} centers do not fill a {per_axis}^{dataset.dimension} grid; "
        f"keeping {m} of its {centers.shape[0]} points."
    )
    return centers[keep]


def center_spacing(dataset: Dataset, centers: np.ndarray) -> float:
    # Smallest gap between distinct centers; the box extent for one center.
    if centers.shape[0] >= 2:
        gaps = pdist(centers)
        gaps = gaps[gaps > 0]
        spacing = float(gaps.min()) if gaps.shape[0] else 0.0
    else:
        lower, upper = dataset.bounding_box()
        spacing = float(np.max(upper - lower))
    if spacing <= 0:
        raise DegenerateNeighborhoodError("the centers have zero spacing")
    return spacing


def _tail_matrix(positions, degree):
    if degree is None:
        return np.zeros((positions.shape[0], 0))
    return basis_monomials(positions.shape[1], degree).design_matrix(positions)


def fit_global(
    dataset: Dataset,
    m: int,
    degree: Optional[int] = DEFAULT_TAIL_DEGREE,
    support_overlap: float = DEFAULT_SUPPORT_OVERLAP,
    kernel: KernelProfile = TRICUBE,
    centers=None
) -> GlobalRbfModel:
    # lambda = (A^T A)^-1 A^T f over the N x (M + tail) system.
    if not support_overlap > 0:
        raise ValueError(f"support overlap ({support_overlap}) must be > 0")
    if centers is None:
        centers = place_centers(dataset, m)
    else:
        centers = as_positions(centers, dataset.dimension)
    tail = _tail_matrix(dataset.positions, degree)
    unknowns = centers.shape[0] + tail.shape[1]
    if len(dataset) < unknowns:
        raise InsufficientPointsError(
            f"N = {len(dataset)} is below the {unknowns} unknowns of the model"
        )
    radius = support_overlap * center_spacing(dataset, centers)
    phi = weight(kernel, cdist(dataset.positions, centers) / radius)
    design = np.column_stack([phi, tail])
    eta = solve_least_squares(design, dataset.values)
    logger.debug(
        f"Fitted global RBF with {centers.shape[0]} centers, support radius "
        f"{radius:.6g} and tail degree {degree}."
    )
    return GlobalRbfModel(
        centers, radius, eta[:centers.shape[0]], eta[centers.shape[0]:],
        degree, kernel
    )


def evaluate_global(model: GlobalRbfModel, x):
    # Evaluate at one position (returns float) or at an (R, D) array.
    single = np.ndim(x) == 0 or (
        np.ndim(x) == 1 and (model.dimension > 1 or np.size(x) == 1)
    )
    points = as_positions(x, model.dimension)
    phi = weight(model.kernel, cdist(points, model.centers) / model.support_radius)
    values = np.asarray(phi).reshape(points.shape[0], -1) @ model.weights
    values = values + _tail_matrix(points, model.degree) @ model.tail
    return float(values[0]) if single else values


def _fmt(v):
    return format(float(v), ".17g")


def dumps_model(model: GlobalRbfModel) -> str:
    degree = -1 if model.degree is None else model.degree
    lines = [
        f"{FORMAT_HEADER} {FORMAT_VERSION} {model.dimension} {len(model)} "
        f"{degree} {_fmt(model.support_radius)}"
    ]
    for center, lam in zip(model.centers, model.weights):
        lines.append(" ".join([_fmt(c) for c in center] + [_fmt(lam)]))
    lines.append(" ".join(_fmt(a) for a in model.tail))
    return "\n".join(lines) + "\n"


def loads_model(text: str) -> GlobalRbfModel:
    lines = text.splitlines()
    header = lines[0].split() if lines else []
    if len(header) != 6 or header[:2] != [FORMAT_HEADER, FORMAT_VERSION]:
        raise ValueError(f"Not an {FORMAT_HEADER} {FORMAT_VERSION} document.")
    dimension, m, degree = int(header[2]), int(header[3]), int(header[4])
    radius = float(header[5])
    if len(lines) < m + 2:
        raise ValueError(f"Expected {m} center lines and a tail line.")
    rows = np.array([[float(t) for t in line.split()] for line in lines[1:m + 1]])
    if rows.shape != (m, dimension + 1):
        raise ValueError(f"Center lines must hold {dimension + 1} numbers each.")
    tail = np.array([float(t) for t in lines[m + 1].split()])
    return GlobalRbfModel(
        rows[:, :dimension], radius, rows[:, dimension], tail,
        None if degree < 0 else degree,
    )


def save_model(model: GlobalRbfModel, path) -> Path:
    path = Path(path)
    try:
        path.write_text(dumps_model(model))
    except OSError as e:
        raise OutputError(path, e) from e
    return path


def load_model(path) -> GlobalRbfModel:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise OutputError(path, e) from e
    return loads_model(text)
