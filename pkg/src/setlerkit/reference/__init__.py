"""Reference systems and attractor comparison."""

from .attractors import (
    CloudMeta,
    ComparisonReport,
    PointCloud,
    attractor_sample,
    compare_attractors,
    system_field,
)
from .lorenz import (
    LorenzField,
    LorenzParams,
    lorenz_divergence,
    lorenz_field,
    lorenz_fixed_points,
    lorenz_jacobian,
    lorenz_rates,
)

__all__ = [
    "CloudMeta",
    "ComparisonReport",
    "LorenzField",
    "LorenzParams",
    "PointCloud",
    "attractor_sample",
    "compare_attractors",
    "lorenz_divergence",
    "lorenz_field",
    "lorenz_fixed_points",
    "lorenz_jacobian",
    "lorenz_rates",
    "system_field",
]
