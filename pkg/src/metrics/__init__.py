from src.metrics.curve import (
    CurvePoints,
    ErrorReport,
    curvature_error,
    distance_error,
    second_difference,
)

__all__ = [
    "CurvePoints",
    "ErrorReport",
    "curvature_error",
    "distance_error",
    "second_difference",
]
