"""Testing utilities for setlerkit."""

from .fields import ConstantField, CountingField, LinearField
from .oracles import (
    angular_difference,
    ball_exp_neg_f_series,
    gaussian_gradient_no_exp,
    gaussian_gradient_series,
    iterate_map_scalar,
    rk4_scalar,
    setler_rates_scalar,
    w_log_slope,
)

__all__ = [
    "ConstantField",
    "CountingField",
    "LinearField",
    "angular_difference",
    "ball_exp_neg_f_series",
    "gaussian_gradient_no_exp",
    "gaussian_gradient_series",
    "iterate_map_scalar",
    "rk4_scalar",
    "setler_rates_scalar",
    "w_log_slope",
]
