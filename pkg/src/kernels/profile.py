"""
Weighting functions and compactly supported radial basis functions.

A profile maps a normalized distance r >= 0 to a weight in [0, 1] with
w(0) = 1, non-increasing on [0, 1] and w(r) = 0 for r >= 1. The same
profile serves as the LOWESS weight and as the RBF kernel.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.utils.errors import DegenerateNeighborhoodError, InvalidRadiusError

logger = logging.getLogger(__name__)


class KernelKind(Enum):
    TRICUBE = "tricube"


def _tricube(r):
    inside = r < 1.0
    return np.where(inside, (1.0 - np.where(inside, r, 1.0) ** 3) ** 3, 0.0)


_PROFILES = {
    KernelKind.TRICUBE: _tricube,
}


@dataclass(frozen=True)
class KernelProfile:
    kind: KernelKind = KernelKind.TRICUBE

    def __call__(self, r):
        return weight(self, r)

    @classmethod
    def from_name(cls, name):
        try:
            return cls(KernelKind(str(name).lower()))
        except ValueError:
            known = ", ".join(k.value for k in KernelKind)
            raise ValueError(f"Unknown kernel '{name}'. Known kernels: {known}")


TRICUBE = KernelProfile(KernelKind.TRICUBE)


def weight(profile: KernelProfile, r):
    # Evaluate the profile at scalar or array r; arrays keep their shape.
    arr = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise InvalidRadiusError(f"r must be finite and >= 0, got {r}")
    result = _PROFILES[profile.kind](arr)
    return float(result) if result.ndim == 0 else result


def normalized_distance(dist, d_max):
    # Scale raw distances into the kernel's unit support.
    if not np.isfinite(d_max) or d_max <= 0:
        raise DegenerateNeighborhoodError(
            f"d_max = {d_max}; all neighbors coincide with the query point"
        )
    result = np.asarray(dist, dtype=float) / d_max
    return float(result) if result.ndim == 0 else result
