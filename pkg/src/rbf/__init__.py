from src.rbf.global_model import (
    DEFAULT_SUPPORT_OVERLAP,
    DEFAULT_TAIL_DEGREE,
    GlobalRbfModel,
    dumps_model,
    evaluate_global,
    fit_global,
    load_model,
    loads_model,
    place_centers,
    save_model,
)
from src.rbf.local import (
    LocalRbfConfig,
    LocalRbfFit,
    fit_local_rbf,
    fit_local_rbf_constant_closed_form,
    fit_local_rbf_no_polynomial_closed_form,
    parse_polynomial,
    smooth_local_rbf,
)

__all__ = [
    "DEFAULT_SUPPORT_OVERLAP",
    "DEFAULT_TAIL_DEGREE",
    "GlobalRbfModel",
    "dumps_model",
    "evaluate_global",
    "fit_global",
    "load_model",
    "loads_model",
    "place_centers",
    "save_model",
    "LocalRbfConfig",
    "LocalRbfFit",
    "fit_local_rbf",
    "fit_local_rbf_constant_closed_form",
    "fit_local_rbf_no_polynomial_closed_form",
    "parse_polynomial",
    "smooth_local_rbf",
]
