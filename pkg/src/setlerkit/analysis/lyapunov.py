"""Lyapunov exponent estimators.

Two families are provided:

- ``lyapunov_1d``: the scalar-map algorithm, averaging log|f'(x_k)| along
  the post-transient orbit. Used on 1D validation maps (logistic, linear).
- Two-trajectory (renormalization) estimators for 3D systems: a reference and
  a perturbed trajectory are advanced together, the separation is measured
  every ``renorm_every`` steps, its log growth accumulated, and the perturbed
  state pulled back to distance d0 along the current separation direction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from ..dynamics.continuous import rk4_advance
from ..dynamics.discrete import map_step_array
from ..dynamics.fields import DEFAULT_DIVERGENCE_BOUND, SetlerField
from ..errors import DivergenceError
from ..interfaces import SetlerParams, SphericalState, TimeGrid, VectorField
from ..utils import is_out_of_bounds

logger = logging.getLogger(__name__)

# log(0) guard for orbit points where the map derivative vanishes
EPS_FLOOR = 1e-300
DEFAULT_D0 = 1e-8
DEFAULT_RENORM_EVERY = 10
FINITE_DIFFERENCE_STEP = 1e-6

ScalarFn = Callable[[float, float], float]


@dataclass(frozen=True)
class ScalarMap:
    """A scalar map x → fn(x, a) with an optional analytic derivative."""
    name: str
    fn: ScalarFn
    derivative: Optional[ScalarFn] = None

    def slope(self, x: float, a: float) -> float:
        if self.derivative is not None:
            return self.derivative(x, a)
        h = FINITE_DIFFERENCE_STEP * max(1.0, abs(x))
        return (self.fn(x + h, a) - self.fn(x - h, a)) / (2 * h)


def _logistic(x: float, a: float) -> float:
    return a * x * (1.0 - x)


def _logistic_slope(x: float, a: float) -> float:
    return a * (1.0 - 2.0 * x)


def _linear(x: float, a: float) -> float:
    return a * x


def _linear_slope(x: float, a: float) -> float:
    return a


def _identity(x: float, a: float) -> float:
    return x


def _identity_slope(x: float, a: float) -> float:
    return 1.0


LOGISTIC = ScalarMap("logistic", _logistic, _logistic_slope)
LINEAR = ScalarMap("linear", _linear, _linear_slope)
IDENTITY = ScalarMap("identity", _identity, _identity_slope)
SCALAR_MAPS = {m.name: m for m in (LOGISTIC, LINEAR, IDENTITY)}


@dataclass
class LyapunovResult:
    """Outcome of one exponent estimate, serialized as the Lyapunov JSON artifact."""
    method: str
    exponent: float
    n: int
    transient: float
    params: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    windows: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------- #
# Scalar maps
# ---------------------------------------------------------------------------- #


def lyapunov_1d_result(
    scalar_map: ScalarMap,
    x0: float,
    a: float,
    n: int,
    tr: int,
) -> LyapunovResult:
    """Scalar-map exponent over the orbit x_0 .. x_{n-1}, skipping the first ``tr``."""
    if not 0 <= tr < n:
        raise ValueError(f"require n > tr >= 0, got n={n}, tr={tr}")

    terms = []
    floored = 0
    x = x0
    for k in range(n):
        if k >= tr:
            slope = abs(scalar_map.slope(x, a))
            if slope == 0.0:
                floored += 1
                slope = EPS_FLOOR
            terms.append(math.log(slope))
        x = scalar_map.fn(x, a)

    warnings = []
    if floored:
        msg = f"derivative vanished at {floored} orbit point(s); floored at {EPS_FLOOR:g}"
        logger.warning(msg)
        warnings.append(msg)

    exponent = math.fsum(terms) / (n - tr)
    return LyapunovResult(
        method="algorithm1",
        exponent=exponent,
        n=n,
        transient=tr,
        params={"map": scalar_map.name, "a": a, "x0": x0},
        warnings=warnings,
    )


def lyapunov_1d(scalar_map: ScalarMap, x0: float, a: float, n: int, tr: int) -> float:
    return lyapunov_1d_result(scalar_map, x0, a, n, tr).exponent


# ---------------------------------------------------------------------------- #
# Two-trajectory estimators
# ---------------------------------------------------------------------------- #


def _initial_offset(d0: float) -> np.ndarray:
    return np.full(3, d0 / math.sqrt(3.0))


def _renormalize(pair: np.ndarray, d0: float, where: str) -> float:
    """Pull pair[1] back to distance d0 from pair[0]; return log(d/d0)."""
    diff = pair[1] - pair[0]
    d = float(np.linalg.norm(diff))
    if d == 0.0 or not math.isfinite(d):
        raise DivergenceError(
            f"separation collapsed or overflowed ({d!r}) at {where}",
            last_finite_index=0,
            last_finite_time=float("nan"),
        )
    pair[1] = pair[0] + diff * (d0 / d)
    return math.log(d / d0)


def largest_lyapunov(
    field: VectorField,
    y0: np.ndarray,
    grid: TimeGrid,
    d0: float = DEFAULT_D0,
    renorm_every: int = DEFAULT_RENORM_EVERY,
    transient: float = 0.0,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> LyapunovResult:
    """Two-trajectory estimate of the largest exponent of a flow.

    ``field`` must accept stacked states of shape (2, 3). The first
    ``transient`` time units advance the reference only.
    """
    if d0 <= 0:
        raise ValueError(f"d0 must be positive, got {d0}")
    if renorm_every < 1:
        raise ValueError(f"renorm_every must be >= 1, got {renorm_every}")

    n = grid.n_steps
    n_transient = min(n, int(math.floor(transient / grid.h + 1e-9)))
    y = np.array(y0, dtype=float, copy=True)
    for k in range(n_transient):
        y = rk4_advance(field, grid.node(k), y, grid.h)
    if is_out_of_bounds(y, divergence_bound):
        raise DivergenceError(
            "reference trajectory diverged during the transient",
            last_finite_index=0,
            last_finite_time=grid.t0,
        )

    pair = np.stack((y, y + _initial_offset(d0)))
    log_sum = 0.0
    windows = 0
    for k in range(n_transient, n):
        tau = grid.node(k)
        pair = rk4_advance(field, tau, pair, grid.h)
        if is_out_of_bounds(pair, divergence_bound):
            raise DivergenceError(
                f"trajectory pair diverged after tau={tau:.6g}",
                last_finite_index=k,
                last_finite_time=tau,
            )
        if (k + 1 - n_transient) % renorm_every == 0:
            log_sum += _renormalize(pair, d0, f"tau={grid.node(k + 1):.6g}")
            windows += 1

    if windows == 0:
        raise ValueError("grid too short for a single renormalization window")
    exponent = log_sum / (windows * renorm_every * grid.h)
    logger.info("Two-trajectory estimate %.6g over %d windows", exponent, windows)
    return LyapunovResult(
        method="flow",
        exponent=exponent,
        n=n,
        transient=transient,
        params={"d0": d0, "renorm_every": renorm_every, "h": grid.h},
        windows=windows,
    )


def lyapunov_two_trajectory_result(
    p: SetlerParams,
    s0: SphericalState,
    grid: TimeGrid,
    d0: float = DEFAULT_D0,
    renorm_every: int = DEFAULT_RENORM_EVERY,
    transient: float = 0.0,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> LyapunovResult:
    result = largest_lyapunov(
        SetlerField(p), s0.as_array(), grid, d0, renorm_every, transient, divergence_bound
    )
    result.params.update(p.to_dict())
    return result


def lyapunov_two_trajectory(
    p: SetlerParams,
    s0: SphericalState,
    grid: TimeGrid,
    d0: float = DEFAULT_D0,
    renorm_every: int = DEFAULT_RENORM_EVERY,
    transient: float = 0.0,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> float:
    """Largest exponent of the continuous Setler system (per unit τ)."""
    return lyapunov_two_trajectory_result(
        p, s0, grid, d0, renorm_every, transient, divergence_bound
    ).exponent


def lyapunov_map_two_trajectory(
    p: SetlerParams,
    s0: SphericalState,
    n_steps: int,
    d0: float = DEFAULT_D0,
    renorm_every: int = DEFAULT_RENORM_EVERY,
    transient: int = 0,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> LyapunovResult:
    """Largest exponent of the forced map, per step."""
    if not 0 <= transient < n_steps:
        raise ValueError(f"require n_steps > transient >= 0, got {n_steps}, {transient}")
    y = s0.as_array()
    for k in range(transient):
        y = map_step_array(y, p, k)
    pair = np.stack((y, y + _initial_offset(d0)))
    log_sum = 0.0
    windows = 0
    for k in range(transient, n_steps):
        pair = map_step_array(pair, p, k)
        if is_out_of_bounds(pair, divergence_bound):
            raise DivergenceError(
                f"map pair diverged at step {k + 1}",
                last_finite_index=k,
                last_finite_time=float(k),
            )
        if (k + 1 - transient) % renorm_every == 0:
            log_sum += _renormalize(pair, d0, f"step {k + 1}")
            windows += 1
    if windows == 0:
        raise ValueError("n_steps too small for a single renormalization window")
    params = p.to_dict()
    params.update({"d0": d0, "renorm_every": renorm_every})
    return LyapunovResult(
        method="map",
        exponent=log_sum / (windows * renorm_every),
        n=n_steps,
        transient=transient,
        params=params,
        windows=windows,
    )
