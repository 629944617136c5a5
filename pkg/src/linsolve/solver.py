"""
Small dense weighted least squares through the normal equations.

The normal matrix A^T W A is equilibrated to unit diagonal and factored
as P^T N P = L D L^T with symmetric (diagonal) pivoting. A pivot below
``RANK_TOLERANCE`` times the largest pivot stops the factorization and
raises RankDeficientError carrying the effective rank.
"""
import logging

import numpy as np
from scipy import linalg

from src.utils.errors import RankDeficientError

logger = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-12


def as_matrix(a):
    arr = np.asarray(a, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def as_vector(v, length=None, name="vector"):
    arr = np.asarray(v, dtype=float).reshape(-1)
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} entries must be finite")
    return arr


def _pivoted_ldl(normal):
    # Returns perm, unit lower L and pivots d with N[perm][:, perm] = L diag(d) L^T.
    m = normal.copy()
    n = m.shape[0]
    perm = np.arange(n)
    lower = np.eye(n)
    pivots = np.zeros(n)
    largest = 0.0
    for k in range(n):
        j = k + int(np.argmax(np.diag(m)[k:]))
        if j != k:
            m[[k, j], :] = m[[j, k], :]
            m[:, [k, j]] = m[:, [j, k]]
            perm[[k, j]] = perm[[j, k]]
            lower[[k, j], :k] = lower[[j, k], :k]
        pivot = m[k, k]
        if k == 0:
            largest = pivot
        if largest <= 0 or pivot <= RANK_TOLERANCE * largest:
            raise RankDeficientError(
                rank=k, detail=f"pivot ratio {pivot / largest if largest > 0 else 0.0:.3g}"
            )
        column = m[k + 1:, k] / pivot
        lower[k + 1:, k] = column
        m[k + 1:, k + 1:] -= np.outer(column, m[k, k + 1:])
        pivots[k] = pivot
    return perm, lower, pivots


def solve_normal_system(normal, rhs):
    # Solve the symmetric positive semidefinite system N a = rhs.
    diag = np.diag(normal)
    scale = np.where(diag > 0, 1.0 / np.sqrt(np.where(diag > 0, diag, 1.0)), 0.0)
    scaled = normal * np.outer(scale, scale)
    perm, lower, pivots = _pivoted_ldl(scaled)
    y = linalg.solve_triangular(
        lower, (scale * rhs)[perm], lower=True, unit_diagonal=True
    )
    y = linalg.solve_triangular(
        lower.T, y / pivots, lower=False, unit_diagonal=True
    )
    z = np.empty_like(y)
    z[perm] = y
    return scale * z


def solve_weighted_normal_equations(A, w, b):
    # a = (A^T W A)^-1 A^T W b for diagonal W = diag(w).
    A = as_matrix(A)
    k, q = A.shape
    w = as_vector(w, k, "weights")
    b = as_vector(b, k, "right-hand side")
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    weighted = A * w[:, None]
    normal = A.T @ weighted
    rhs = weighted.T @ b
    return solve_normal_system(normal, rhs)


def solve_least_squares(A, f):
    # eta = (A^T A)^-1 A^T f, the unweighted special case.
    A = as_matrix(A)
    return solve_weighted_normal_equations(A, np.ones(A.shape[0]), f)


def weighted_residual_sum(A, w, b, a):
    # Objective sum w_i (b_i - (A a)_i)^2 at a given solution.
    residual = np.asarray(b, dtype=float) - as_matrix(A) @ np.asarray(a, dtype=float)
    return float(np.sum(np.asarray(w, dtype=float) * residual ** 2))
