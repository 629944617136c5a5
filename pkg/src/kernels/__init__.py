from src.kernels.profile import (
    TRICUBE,
    KernelKind,
    KernelProfile,
    normalized_distance,
    weight,
)

__all__ = [
    "TRICUBE",
    "KernelKind",
    "KernelProfile",
    "normalized_distance",
    "weight",
]
