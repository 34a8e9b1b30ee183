"""Shared numeric helpers used across setlerkit.

Angle wrapping lives here so that the core types, the bifurcation scan
and the artifact writers agree on a single convention.
"""

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Map an angle into [0, 2π).

    Tiny negative inputs round to 2π under ``%``; those are folded back to 0
    so that wrapping is idempotent.
    """
    wrapped = angle % TWO_PI
    if wrapped >= TWO_PI:
        return 0.0
    return float(wrapped)


def wrap_angles(angles: np.ndarray) -> np.ndarray:
    """Vectorized :func:`wrap_angle`."""
    wrapped = np.mod(angles, TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def euclidean_distance(a, b) -> np.ndarray:
    """Distance along the trailing axis."""
    return np.linalg.norm(np.asarray(a) - np.asarray(b), axis=-1)


def is_out_of_bounds(values: np.ndarray, bound: float) -> bool:
    """True when any component is non-finite or exceeds ``bound`` in magnitude."""
    if not np.all(np.isfinite(values)):
        return True
    return bool(np.any(np.abs(values) > bound))
