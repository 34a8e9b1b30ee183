"""Discrete and continuous Setler dynamics."""

from .continuous import (
    euler_advance,
    euler_discretize,
    integrate,
    integrate_field,
    rk4_advance,
    rk4_stages,
    rk4_step,
    vector_field,
)
from .discrete import forced_step, iterate_map, linear_step, map_step_array, nonlinear_terms
from .fields import DEFAULT_DIVERGENCE_BOUND, SetlerField, setler_rates

__all__ = [
    "DEFAULT_DIVERGENCE_BOUND",
    "SetlerField",
    "euler_advance",
    "euler_discretize",
    "forced_step",
    "integrate",
    "integrate_field",
    "iterate_map",
    "linear_step",
    "map_step_array",
    "nonlinear_terms",
    "rk4_advance",
    "rk4_stages",
    "rk4_step",
    "setler_rates",
    "vector_field",
]
