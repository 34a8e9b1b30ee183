"""Discrete-time Setler map.

Three layers, each a standalone model:

1. ``linear_step``: the linear baseline, every component advanced by λ·Δ.
2. ``nonlinear_terms``: the trigonometric couplings (f, g, h).
3. ``forced_step``: the chaotified map, nonlinear terms plus periodic forcing
   evaluated at the integer step index.

``iterate_map`` applies ``forced_step`` repeatedly and stops on the first
state that is non-finite or beyond the divergence bound.
"""

from __future__ import annotations

import logging

import numpy as np

from ..errors import DivergenceError
from ..interfaces import LinearIncrements, SetlerParams, SphericalState, Trajectory
from ..utils import is_out_of_bounds
from .fields import DEFAULT_DIVERGENCE_BOUND, setler_rates

logger = logging.getLogger(__name__)


def linear_step(s: SphericalState, inc: LinearIncrements, lam: float) -> SphericalState:
    """Advance each component by λ times its increment."""
    return SphericalState(
        s.alpha + lam * inc.d_alpha,
        s.delta + lam * inc.d_delta,
        s.r + lam * inc.d_r,
    )


def nonlinear_terms(s: SphericalState, lam: float) -> tuple[float, float, float]:
    """(f, g, h) = (λ sinα cosδ, λ cosα sinδ, λ (sinδ cosα)²)."""
    rates = setler_rates(0.0, s.as_array(), SetlerParams(lam=lam))
    return float(rates[0]), float(rates[1]), float(rates[2])


def map_step_array(y: np.ndarray, p: SetlerParams, n: int, lam=None) -> np.ndarray:
    """Array form of :func:`forced_step`; ``y`` may carry batch axes."""
    return y + setler_rates(n, y, p, lam=lam)


def forced_step(s: SphericalState, p: SetlerParams, n: int) -> SphericalState:
    """One step of the forced map with forcing phase ωn."""
    if n < 0:
        raise ValueError(f"step index must be non-negative, got {n}")
    return SphericalState.from_array(map_step_array(s.as_array(), p, n))


def iterate_map(
    s0: SphericalState,
    p: SetlerParams,
    n_steps: int,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> Trajectory:
    """Iterate the forced map, returning n_steps + 1 states indexed by step.

    Raises:
        DivergenceError: A state became non-finite or exceeded
            ``divergence_bound``; the error carries the finite prefix.
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be >= 0, got {n_steps}")

    values = np.empty((n_steps + 1, 3), dtype=float)
    values[0] = s0.as_array()
    for k in range(n_steps):
        nxt = map_step_array(values[k], p, k)
        if is_out_of_bounds(nxt, divergence_bound):
            partial = Trajectory(np.arange(k + 1), values[: k + 1], {"params": p.to_dict()})
            logger.warning("Map diverged at step %d (last finite step %d)", k + 1, k)
            raise DivergenceError(
                f"map state left the bounded region at step {k + 1}",
                last_finite_index=k,
                last_finite_time=float(k),
                partial=partial,
            )
        values[k + 1] = nxt

    logger.debug("Iterated map for %d steps, final state %s", n_steps, values[-1])
    return Trajectory(np.arange(n_steps + 1), values, {"params": p.to_dict()})
