"""Chaos diagnostics for the Setler system."""

from .bifurcation import BifurcationData, bifurcation_scan
from .fitting import AsymptoticFit, fit_asymptotic, tail_slopes
from .hyperbolicity import (
    JacobianReport,
    jacobian_autonomous,
    numerical_divergence,
    numerical_jacobian,
)
from .lyapunov import (
    IDENTITY,
    LINEAR,
    LOGISTIC,
    SCALAR_MAPS,
    LyapunovResult,
    ScalarMap,
    largest_lyapunov,
    lyapunov_1d,
    lyapunov_1d_result,
    lyapunov_map_two_trajectory,
    lyapunov_two_trajectory,
    lyapunov_two_trajectory_result,
)
from .sensitivity import DivergenceSeries, sensitivity_pair

__all__ = [
    "AsymptoticFit",
    "BifurcationData",
    "DivergenceSeries",
    "IDENTITY",
    "JacobianReport",
    "LINEAR",
    "LOGISTIC",
    "LyapunovResult",
    "SCALAR_MAPS",
    "ScalarMap",
    "bifurcation_scan",
    "fit_asymptotic",
    "jacobian_autonomous",
    "largest_lyapunov",
    "lyapunov_1d",
    "lyapunov_1d_result",
    "lyapunov_map_two_trajectory",
    "lyapunov_two_trajectory",
    "lyapunov_two_trajectory_result",
    "numerical_divergence",
    "numerical_jacobian",
    "sensitivity_pair",
    "tail_slopes",
]
