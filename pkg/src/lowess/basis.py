import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from src.utils.errors import ConstantTermRequiredError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolynomialBasis:
    # Monomials x^e for exponent tuples e, constant term first.
    dimension: int
    exponents: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.exponents)

    @property
    def degree(self):
        return max(sum(e) for e in self.exponents)

    def design_matrix(self, offsets):
        # One row per offset, one column per monomial.
        offsets = np.asarray(offsets, dtype=float).reshape(-1, self.dimension)
        powers = np.array(self.exponents, dtype=float)
        return np.prod(offsets[:, None, :] ** powers[None, :, :], axis=2)

    def restricted(self, degree):
        # Keep only the terms of total degree <= degree.
        return PolynomialBasis(
            self.dimension,
            tuple(e for e in self.exponents if sum(e) <= degree),
        )


def _normalize_mask(mask, dimension):
    if not mask:
        return set()
    normalized = set()
    for term in mask:
        term = tuple(int(p) for p in np.atleast_1d(term))
        if len(term) != dimension:
            raise ValueError(f"mask term {term} does not have dimension {dimension}")
        normalized.add(term)
    return normalized


def basis_monomials(
    dimension: int,
    degree: int,
    mask: Optional[Iterable] = None
) -> PolynomialBasis:
    # Full monomial set of total degree <= degree, minus masked terms.
    if dimension < 1:
        raise ValueError(f"dimension ({dimension}) must be at least 1")
    if degree < 0:
        raise ValueError(f"degree ({degree}) must be non-negative")
    removed = _normalize_mask(mask, dimension)
    constant = (0,) * dimension
    if constant in removed:
        raise ConstantTermRequiredError("the mask removes the constant term")
    terms = [
        e for e in itertools.product(range(degree + 1), repeat=dimension)
        if sum(e) <= degree and e not in removed
    ]
    # Degree first, then x before y before z within a degree.
    terms.sort(key=lambda e: (sum(e), tuple(-p for p in e)))
    return PolynomialBasis(dimension, tuple(terms))
