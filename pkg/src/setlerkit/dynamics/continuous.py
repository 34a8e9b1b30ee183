"""Continuous-time Setler dynamics and fixed-step integrators.

The integrators are generic over any :class:`~setlerkit.interfaces.VectorField`
so that test fields and the Lorenz system run through the same code as the
Setler field. Only the classical fixed-step RK4 scheme (and explicit Euler,
for consistency checks) is provided.
"""

from __future__ import annotations

import logging
from typing import Literal, Optional

import numpy as np

from ..errors import DivergenceError
from ..interfaces import (
    Derivative,
    SetlerParams,
    SphericalState,
    TimeGrid,
    Trajectory,
    VectorField,
)
from ..utils import is_out_of_bounds
from .fields import DEFAULT_DIVERGENCE_BOUND, SetlerField, setler_rates

logger = logging.getLogger(__name__)

Method = Literal["rk4", "euler"]


def vector_field(s: SphericalState, tau: float, p: SetlerParams) -> Derivative:
    """Time derivative of the forced system at (s, τ)."""
    rates = setler_rates(tau, s.as_array(), p)
    return Derivative(float(rates[0]), float(rates[1]), float(rates[2]))


def rk4_stages(
    field: VectorField, tau: float, y: np.ndarray, h: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four scaled slopes k1..k4 of a classical RK4 step."""
    k1 = h * field(tau, y)
    k2 = h * field(tau + h / 2, y + k1 / 2)
    k3 = h * field(tau + h / 2, y + k2 / 2)
    k4 = h * field(tau + h, y + k3)
    return k1, k2, k3, k4


def rk4_advance(field: VectorField, tau: float, y: np.ndarray, h: float) -> np.ndarray:
    """One classical RK4 step of size h from (τ, y)."""
    k1, k2, k3, k4 = rk4_stages(field, tau, y, h)
    return y + (k1 + 2 * k2 + 2 * k3 + k4) / 6


def euler_advance(field: VectorField, tau: float, y: np.ndarray, h: float) -> np.ndarray:
    """x + h·F(τ, x)."""
    return y + h * field(tau, y)


_ADVANCE = {"rk4": rk4_advance, "euler": euler_advance}


def rk4_step(
    s: SphericalState,
    tau: float,
    h: float,
    p: SetlerParams,
    field: Optional[VectorField] = None,
) -> SphericalState:
    """Advance a single state by one RK4 step (h = 0 returns s)."""
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    field = field or SetlerField(p)
    y = s.as_array()
    stages = rk4_stages(field, tau, y, h)
    for i, k in enumerate(stages, start=1):
        if not np.all(np.isfinite(k)):
            raise DivergenceError(
                f"RK4 stage k{i} from tau={tau} is non-finite",
                last_finite_index=0,
                last_finite_time=tau,
            )
    k1, k2, k3, k4 = stages
    nxt = y + (k1 + 2 * k2 + 2 * k3 + k4) / 6
    if not np.all(np.isfinite(nxt)):
        raise DivergenceError(
            f"RK4 step from tau={tau} produced a non-finite state",
            last_finite_index=0,
            last_finite_time=tau,
        )
    return SphericalState.from_array(nxt)


def euler_discretize(s: SphericalState, tau: float, dtau: float, p: SetlerParams) -> SphericalState:
    """Discrete bridge x_{n+1} = x_n + Δτ·F(x_n, τ_n)."""
    return SphericalState.from_array(s.as_array() + dtau * setler_rates(tau, s.as_array(), p))


def integrate_field(
    field: VectorField,
    y0: np.ndarray,
    grid: TimeGrid,
    method: Method = "rk4",
    checkpoint_every: int = 1,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``field`` over ``grid``.

    Returns (times, values) for node 0, every ``checkpoint_every``-th node and
    the final node. ``y0`` may carry leading batch axes.

    Raises:
        DivergenceError: with the last finite node time and the retained
            samples up to that node (as ``partial`` when the state is 3-D).
    """
    if method not in _ADVANCE:
        raise ValueError(f"method must be one of {sorted(_ADVANCE)}, got {method!r}")
    if checkpoint_every < 1:
        raise ValueError(f"checkpoint_every must be >= 1, got {checkpoint_every}")
    advance = _ADVANCE[method]

    n = grid.n_steps
    keep = [k for k in range(0, n + 1, checkpoint_every)]
    if keep[-1] != n:
        keep.append(n)
    y = np.array(y0, dtype=float, copy=True)
    times = np.array([grid.node(k) for k in keep])
    values = np.empty((len(keep),) + y.shape, dtype=float)
    values[0] = y
    slot = 1

    for k in range(n):
        tau = grid.node(k)
        nxt = advance(field, tau, y, grid.h)
        if is_out_of_bounds(nxt, divergence_bound):
            partial = None
            if y.shape == (3,):
                partial = Trajectory(times[:slot], values[:slot])
            logger.warning("Integration diverged after tau=%.6g (step %d of %d)", tau, k + 1, n)
            raise DivergenceError(
                f"integration left the bounded region between tau={tau:.6g} "
                f"and tau={grid.node(k + 1):.6g}",
                last_finite_index=k,
                last_finite_time=tau,
                partial=partial,
            )
        y = nxt
        if slot < len(keep) and keep[slot] == k + 1:
            values[slot] = y
            slot += 1

    return times, values


def integrate(
    s0: SphericalState,
    grid: TimeGrid,
    p: Optional[SetlerParams] = None,
    *,
    field: Optional[VectorField] = None,
    method: Method = "rk4",
    checkpoint_every: int = 1,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> Trajectory:
    """Integrate the Setler system (or an injected field) from ``s0``.

    Exactly one of ``p`` and ``field`` drives the integration; ``field``
    takes precedence when both are given.
    """
    if field is None:
        if p is None:
            raise ValueError("either params or an explicit field is required")
        field = SetlerField(p)
    times, values = integrate_field(
        field, s0.as_array(), grid,
        method=method,
        checkpoint_every=checkpoint_every,
        divergence_bound=divergence_bound,
    )
    meta = {"method": method, "h": grid.h, "checkpoint_every": checkpoint_every}
    if p is not None:
        meta["params"] = p.to_dict()
    logger.debug(
        "Integrated %d steps with %s (h=%g), %d samples kept",
        grid.n_steps, method, grid.h, len(times),
    )
    return Trajectory(times, values, meta)
