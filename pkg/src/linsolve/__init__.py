from src.linsolve.solver import (
    RANK_TOLERANCE,
    solve_least_squares,
    solve_normal_system,
    solve_weighted_normal_equations,
    weighted_residual_sum,
)

__all__ = [
    "RANK_TOLERANCE",
    "solve_least_squares",
    "solve_normal_system",
    "solve_weighted_normal_equations",
    "weighted_residual_sum",
]
