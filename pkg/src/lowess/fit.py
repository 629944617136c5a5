"""
Locally weighted polynomial regression (LOWESS) of any degree in D
dimensions.

Each query point xi gets its own weighted least-squares polynomial over
its K nearest samples, written in the shifted basis (x - xi) so the
smoothed value is the constant coefficient. For 1D data with degree 0 or
1 the explicit 1x1 / 2x2 solutions are used instead of the general path.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.geometry import Dataset, NeighborSet, build_index
from src.geometry.dataset import as_positions
from src.geometry.index import check_neighbor_count
from src.kernels import TRICUBE, KernelProfile, normalized_distance, weight
from src.linsolve import (
    RANK_TOLERANCE,
    solve_weighted_normal_equations,
    weighted_residual_sum,
)
from src.lowess.basis import PolynomialBasis, basis_monomials
from src.utils.errors import (
    DegenerateNeighborhoodError,
    QueryError,
    RankDeficientError,
    SmoothingError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LowessConfig:
    degree: int = 1
    neighbors: int = 100
    kernel: KernelProfile = TRICUBE
    mask: Optional[Tuple[Tuple[int, ...], ...]] = None
    degree_fallback: bool = True

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ValueError(f"degree ({self.degree}) must be a non-negative integer")
        if int(self.neighbors) != self.neighbors or self.neighbors < 1:
            raise ValueError(f"neighbors ({self.neighbors}) must be a positive integer")
        if self.mask is not None:
            object.__setattr__(
                self, "mask", tuple(tuple(int(p) for p in term) for term in self.mask)
            )

    def basis(self, dimension):
        return basis_monomials(dimension, self.degree, self.mask)


@dataclass(frozen=True, eq=False)
class LocalFit:
    # Local polynomial around center, coefficients in the shifted basis.
    center: np.ndarray
    coefficients: np.ndarray
    objective: float
    degree: int
    basis: PolynomialBasis

    @property
    def value(self):
        return float(self.coefficients[0])

    def evaluate(self, x):
        offsets = np.asarray(x, dtype=float).reshape(-1, self.basis.dimension) - self.center
        result = self.basis.design_matrix(offsets) @ self.coefficients
        return float(result[0]) if result.shape[0] == 1 else result


def neighbor_weights(neighbors: NeighborSet, kernel: KernelProfile):
    # Kernel weights of the neighbors, radii scaled by d_max.
    radii = normalized_distance(neighbors.distances, neighbors.d_max)
    weights = np.asarray(weight(kernel, radii), dtype=float).reshape(-1)
    if not np.any(weights > 0):
        raise DegenerateNeighborhoodError(
            "every neighbor sits on the support boundary"
        )
    return weights


def _local_data(neighbors, dataset):
    offsets = dataset.positions[neighbors.indices] - neighbors.query
    return offsets, dataset.values[neighbors.indices]


def fit_local(
    neighbors: NeighborSet,
    dataset: Dataset,
    config: LowessConfig
) -> LocalFit:
    # General weighted fit a = (A^T W A)^-1 A^T W b in the shifted basis.
    offsets, values = _local_data(neighbors, dataset)
    weights = neighbor_weights(neighbors, config.kernel)
    basis = config.basis(dataset.dimension)
    degree = config.degree
    while True:
        design = basis.design_matrix(offsets)
        try:
            coefficients = solve_weighted_normal_equations(design, weights, values)
            break
        except RankDeficientError as e:
            if not config.degree_fallback or degree == 0:
                raise
            logger.debug(
                f"Degree {degree} fit at {neighbors.query} is singular "
                f"({e}); retrying with degree {degree - 1}."
            )
            degree -= 1
            basis = basis.restricted(degree)
    objective = weighted_residual_sum(design, weights, values, coefficients)
    return LocalFit(neighbors.query, coefficients, objective, degree, basis)


def fit_constant_closed_form(
    neighbors: NeighborSet,
    dataset: Dataset,
    kernel: KernelProfile = TRICUBE
) -> LocalFit:
    # a0 = sum(w y) / sum(w).
    _, values = _local_data(neighbors, dataset)
    weights = neighbor_weights(neighbors, kernel)
    a0 = float(np.sum(weights * values) / np.sum(weights))
    objective = float(np.sum(weights * (values - a0) ** 2))
    basis = basis_monomials(dataset.dimension, 0)
    return LocalFit(neighbors.query, np.array([a0]), objective, 0, basis)


def fit_linear_closed_form(
    neighbors: NeighborSet,
    dataset: Dataset,
    kernel: KernelProfile = TRICUBE
) -> LocalFit:
    # Explicit inverse of the 2x2 normal matrix, 1D shifted coordinates.
    if dataset.dimension != 1:
        raise ValueError("the closed-form linear fit is defined for 1D data only")
    offsets, values = _local_data(neighbors, dataset)
    u = offsets[:, 0]
    weights = neighbor_weights(neighbors, kernel)
    sw = np.sum(weights)
    swu = np.sum(weights * u)
    swuu = np.sum(weights * u * u)
    swy = np.sum(weights * values)
    swuy = np.sum(weights * u * values)
    denominator = sw * swuu - swu * swu
    if denominator <= RANK_TOLERANCE * sw * swuu:
        raise RankDeficientError(
            rank=1, detail="all weighted neighbors share one abscissa"
        )
    a0 = (swy * swuu - swu * swuy) / denominator
    a1 = (sw * swuy - swu * swy) / denominator
    coefficients = np.array([a0, a1])
    objective = float(np.sum(weights * (values - a0 - a1 * u) ** 2))
    basis = basis_monomials(1, 1)
    return LocalFit(neighbors.query, coefficients, objective, 1, basis)


def _closed_form_fit(neighbors, dataset, config):
    if config.degree == 0:
        return fit_constant_closed_form(neighbors, dataset, config.kernel)
    try:
        return fit_linear_closed_form(neighbors, dataset, config.kernel)
    except RankDeficientError:
        if not config.degree_fallback:
            raise
        return fit_constant_closed_form(neighbors, dataset, config.kernel)


def uses_closed_form(dimension, config):
    return dimension == 1 and config.mask is None and config.degree in (0, 1)


def resolve_queries(dataset, queries):
    # Default to the sample positions; otherwise coerce to (R, D).
    if queries is None:
        return dataset.positions
    queries = as_positions(queries, dataset.dimension)
    if queries.shape[0] == 0:
        raise ValueError("at least one query point is required")
    return queries


def smooth(
    dataset: Dataset,
    queries=None,
    config: LowessConfig = LowessConfig(),
    index=None
) -> np.ndarray:
    # Smoothed value a0 at every query point.
    queries = resolve_queries(dataset, queries)
    check_neighbor_count(config.neighbors, len(dataset))
    index = index if index is not None else build_index(dataset)
    closed = uses_closed_form(dataset.dimension, config)
    fitted = np.empty(queries.shape[0])
    for i, xi in enumerate(queries):
        try:
            neighbors = index.query(xi, config.neighbors)
            if closed:
                fit = _closed_form_fit(neighbors, dataset, config)
            else:
                fit = fit_local(neighbors, dataset, config)
        except SmoothingError as e:
            raise QueryError(i, e) from e
        fitted[i] = fit.value
    return fitted
