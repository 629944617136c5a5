# Datasets, distances and exact k-nearest-neighbor selection.
from src.geometry.dataset import Dataset, SamplePoint
from src.geometry.index import (
    NeighborSet,
    SpatialIndex,
    brute_force_knn,
    build_index,
    k_nearest,
)

__all__ = [
    "Dataset",
    "SamplePoint",
    "NeighborSet",
    "SpatialIndex",
    "brute_force_knn",
    "build_index",
    "k_nearest",
]
