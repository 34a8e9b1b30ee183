"""Entropy functionals: closed forms, F-functional cases and the W-functional."""

from .closed_form import (
    ClosedFormParams,
    ResidualReport,
    closed_form_alpha,
    closed_form_alpha_rate,
    closed_form_delta,
    closed_form_r,
    closed_form_residual,
    closed_form_series,
)
from .functionals import (
    EntropySpec,
    FunctionalResult,
    GaussianProfile,
    QuadratureSettings,
    f_functional_gaussian,
    f_functional_perturbed,
    f_functional_quadratic,
    grid_integral_3d,
    radial_grid_integral,
    radial_quad,
)
from .montecarlo import MCEstimate, monte_carlo
from .w_functional import (
    GrowthComparison,
    WPoint,
    compare_growth,
    entropy_growth_rate,
    w_functional,
    w_functional_quadrature,
    w_series,
)

__all__ = [
    "ClosedFormParams",
    "EntropySpec",
    "FunctionalResult",
    "GaussianProfile",
    "GrowthComparison",
    "MCEstimate",
    "QuadratureSettings",
    "ResidualReport",
    "WPoint",
    "closed_form_alpha",
    "closed_form_alpha_rate",
    "closed_form_delta",
    "closed_form_r",
    "closed_form_residual",
    "closed_form_series",
    "compare_growth",
    "entropy_growth_rate",
    "f_functional_gaussian",
    "f_functional_perturbed",
    "f_functional_quadratic",
    "grid_integral_3d",
    "monte_carlo",
    "radial_grid_integral",
    "radial_quad",
    "w_functional",
    "w_functional_quadrature",
    "w_series",
]
