"""Vector fields of the Setler system.

The forced rates below are the single source of truth for both the
continuous field and the discrete map: the map is x + F(n, x) and the Euler
bridge is x + Δτ·F(τ, x), so the two agree bitwise when Δτ = 1 and τ = n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..interfaces import SetlerParams

# Magnitude beyond which a state is treated as blown up. Bounded trigonometric
# increments grow linearly at worst, so non-finite values alone never trigger.
DEFAULT_DIVERGENCE_BOUND = 1e8

ArrayLike = Union[float, np.ndarray]


def setler_rates(
    tau: ArrayLike,
    y: np.ndarray,
    p: SetlerParams,
    lam: Optional[ArrayLike] = None,
) -> np.ndarray:
    """Forced Setler rates F(τ, y) for states with trailing dimension 3.

    dα = λ sinα cosδ + β sin(ωτ)
    dδ = λ cosα sinδ + γ cos(ωτ)
    dr = λ (sinδ cosα)² + a sin(ωτ), a = δ_f or δ depending on ``p.r_forcing``

    Args:
        tau: Time (or step index) of the forcing phase.
        y: State array of shape (..., 3).
        p: System parameters.
        lam: Optional λ override, broadcast against the leading axes of ``y``.
    """
    lam = p.lam if lam is None else lam
    alpha = y[..., 0]
    delta = y[..., 1]
    sin_a = np.sin(alpha)
    cos_a = np.cos(alpha)
    sin_d = np.sin(delta)
    cos_d = np.cos(delta)
    phase = p.omega * tau
    sin_phase = np.sin(phase)
    cos_phase = np.cos(phase)

    r_amplitude = delta if p.r_forcing == "declination" else p.delta_f
    d_alpha = lam * sin_a * cos_d + p.beta * sin_phase
    d_delta = lam * cos_a * sin_d + p.gamma * cos_phase
    d_r = lam * (sin_d * cos_a) ** 2 + r_amplitude * sin_phase
    return np.stack(np.broadcast_arrays(d_alpha, d_delta, d_r), axis=-1)


@dataclass(frozen=True)
class SetlerField:
    """Callable F(τ, y) bound to a parameter set."""
    params: SetlerParams

    def __call__(self, tau: float, y: np.ndarray) -> np.ndarray:
        return setler_rates(tau, y, self.params)

    def unforced(self) -> "SetlerField":
        return SetlerField(self.params.unforced())
