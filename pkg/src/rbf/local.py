"""
Simplified local RBF approximation.

One compactly supported basis function is centered at the query point
xi and fitted, optionally with a shifted polynomial tail, to the K
nearest samples by ordinary least squares. Radii are scaled by d_max
exactly as the LOWESS weights are, so both methods see the same kernel.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.geometry import Dataset, NeighborSet, build_index
from src.geometry.index import check_neighbor_count
from src.kernels import TRICUBE, KernelProfile, normalized_distance, weight
from src.linsolve import RANK_TOLERANCE, solve_least_squares
from src.lowess.basis import basis_monomials
from src.lowess.fit import resolve_queries
from src.utils.errors import (
    DegenerateNeighborhoodError,
    QueryError,
    RankDeficientError,
    SmoothingError,
)

logger = logging.getLogger(__name__)

NO_POLYNOMIAL = None
CONSTANT = 0


def parse_polynomial(text):
    # "none" -> None, "const"/"constant" -> 0, digits -> degree.
    token = str(text).strip().lower()
    if token in ("none", "no", ""):
        return NO_POLYNOMIAL
    if token in ("const", "constant"):
        return CONSTANT
    try:
        degree = int(token.lstrip("d"))
    except ValueError:
        raise ValueError(
            f"Invalid polynomial tail '{text}'. Use none, const or a degree."
        )
    if degree < 0:
        raise ValueError(f"Polynomial degree ({degree}) must be non-negative.")
    return degree


def polynomial_label(polynomial):
    if polynomial is NO_POLYNOMIAL:
        return "none"
    return "const" if polynomial == CONSTANT else str(polynomial)


@dataclass(frozen=True)
class LocalRbfConfig:
    polynomial: Optional[int] = CONSTANT
    neighbors: int = 100
    kernel: KernelProfile = TRICUBE
    degree_fallback: bool = True

    def __post_init__(self):
        if self.polynomial is not None and (
            int(self.polynomial) != self.polynomial or self.polynomial < 0
        ):
            raise ValueError(f"polynomial degree ({self.polynomial}) must be >= 0 or None")
        if int(self.neighbors) != self.neighbors or self.neighbors < 1:
            raise ValueError(f"neighbors ({self.neighbors}) must be a positive integer")

    def unknowns(self, dimension):
        if self.polynomial is None:
            return 1
        return 1 + len(basis_monomials(dimension, self.polynomial))


@dataclass(frozen=True, eq=False)
class LocalRbfFit:
    center: np.ndarray
    lambda1: float
    coefficients: np.ndarray
    residual_norm: float
    polynomial: Optional[int]
    kernel: KernelProfile = TRICUBE

    @property
    def value(self):
        tail = float(self.coefficients[0]) if self.coefficients.shape[0] else 0.0
        return self.lambda1 * self.kernel(0.0) + tail


def kernel_values(neighbors: NeighborSet, kernel: KernelProfile):
    # Phi(||x_i - xi|| / d_max); a neighborhood sitting entirely on xi gets Phi(0).
    if neighbors.d_max == 0:
        radii = np.zeros(len(neighbors))
    else:
        radii = normalized_distance(neighbors.distances, neighbors.d_max)
    phi = np.asarray(weight(kernel, radii), dtype=float).reshape(-1)
    if not np.any(phi > 0):
        raise DegenerateNeighborhoodError(
            "every neighbor sits on the kernel support boundary"
        )
    return phi


def _local_data(neighbors, dataset):
    offsets = dataset.positions[neighbors.indices] - neighbors.query
    return offsets, dataset.values[neighbors.indices]


def _design(phi, offsets, polynomial, dimension):
    if polynomial is None:
        return phi.reshape(-1, 1)
    tail = basis_monomials(dimension, polynomial).design_matrix(offsets)
    return np.column_stack([phi, tail])


def fit_local_rbf(
    neighbors: NeighborSet,
    dataset: Dataset,
    config: LocalRbfConfig
) -> LocalRbfFit:
    # eta = [lambda1, a] = (A^T A)^-1 A^T f with A = [Phi | shifted monomials].
    offsets, values = _local_data(neighbors, dataset)
    phi = kernel_values(neighbors, config.kernel)
    polynomial = config.polynomial
    while True:
        design = _design(phi, offsets, polynomial, dataset.dimension)
        try:
            eta = solve_least_squares(design, values)
            break
        except RankDeficientError as e:
            if not config.degree_fallback or polynomial is None:
                raise
            lowered = polynomial - 1 if polynomial > 0 else None
            logger.debug(
                f"Local RBF fit at {neighbors.query} with tail "
                f"{polynomial_label(polynomial)} is singular ({e}); "
                f"retrying with tail {polynomial_label(lowered)}."
            )
            polynomial = lowered
    residual = float(np.linalg.norm(design @ eta - values))
    return LocalRbfFit(
        neighbors.query, float(eta[0]), eta[1:], residual, polynomial, config.kernel
    )


def fit_local_rbf_constant_closed_form(
    neighbors: NeighborSet,
    dataset: Dataset,
    kernel: KernelProfile = TRICUBE
) -> LocalRbfFit:
    # Explicit inverse of [[sum phi^2, sum phi], [sum phi, K]].
    _, values = _local_data(neighbors, dataset)
    phi = kernel_values(neighbors, kernel)
    k = float(phi.shape[0])
    s1 = np.sum(phi)
    s2 = np.sum(phi * phi)
    sf = np.sum(values)
    spf = np.sum(phi * values)
    denominator = s2 * k - s1 * s1
    if denominator <= RANK_TOLERANCE * s2 * k:
        raise RankDeficientError(
            rank=1, detail="every neighbor has the same kernel value"
        )
    lambda1 = float((k * spf - s1 * sf) / denominator)
    a0 = float((s2 * sf - s1 * spf) / denominator)
    residual = float(np.linalg.norm(lambda1 * phi + a0 - values))
    return LocalRbfFit(
        neighbors.query, lambda1, np.array([a0]), residual, CONSTANT, kernel
    )


def fit_local_rbf_no_polynomial_closed_form(
    neighbors: NeighborSet,
    dataset: Dataset,
    kernel: KernelProfile = TRICUBE
) -> LocalRbfFit:
    # lambda1 = sum(phi f) / sum(phi^2).
    _, values = _local_data(neighbors, dataset)
    phi = kernel_values(neighbors, kernel)
    lambda1 = float(np.sum(phi * values) / np.sum(phi * phi))
    residual = float(np.linalg.norm(lambda1 * phi - values))
    return LocalRbfFit(
        neighbors.query, lambda1, np.zeros(0), residual, NO_POLYNOMIAL, kernel
    )


def _closed_form_fit(neighbors, dataset, config):
    if config.polynomial is None:
        return fit_local_rbf_no_polynomial_closed_form(
            neighbors, dataset, config.kernel
        )
    try:
        return fit_local_rbf_constant_closed_form(neighbors, dataset, config.kernel)
    except RankDeficientError:
        if not config.degree_fallback:
            raise
        return fit_local_rbf_no_polynomial_closed_form(
            neighbors, dataset, config.kernel
        )


def smooth_local_rbf(
    dataset: Dataset,
    queries=None,
    config: LocalRbfConfig = LocalRbfConfig(),
    index=None
) -> np.ndarray:
    # Simplified-RBF value lambda1 * Phi(0) + a0 at every query point.
    queries = resolve_queries(dataset, queries)
    check_neighbor_count(config.neighbors, len(dataset))
    index = index if index is not None else build_index(dataset)
    closed = config.polynomial in (NO_POLYNOMIAL, CONSTANT)
    fitted = np.empty(queries.shape[0])
    for i, xi in enumerate(queries):
        try:
            neighbors = index.query(xi, config.neighbors)
            if closed:
                fit = _closed_form_fit(neighbors, dataset, config)
            else:
                fit = fit_local_rbf(neighbors, dataset, config)
        except SmoothingError as e:
            raise QueryError(i, e) from e
        fitted[i] = fit.value
    return fitted
