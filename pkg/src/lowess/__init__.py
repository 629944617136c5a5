from src.lowess.basis import PolynomialBasis, basis_monomials
from src.lowess.fit import (
    LocalFit,
    LowessConfig,
    fit_constant_closed_form,
    fit_linear_closed_form,
    fit_local,
    neighbor_weights,
    smooth,
)

__all__ = [
    "PolynomialBasis",
    "basis_monomials",
    "LocalFit",
    "LowessConfig",
    "fit_constant_closed_form",
    "fit_linear_closed_form",
    "fit_local",
    "neighbor_weights",
    "smooth",
]
