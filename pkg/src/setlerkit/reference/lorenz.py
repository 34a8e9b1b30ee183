"""The Lorenz system, used as the benchmark attractor."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NonFiniteStateError


@dataclass(frozen=True)
class LorenzParams:
    sigma: float = 10.0
    rho: float = 28.0
    beta_l: float = 8.0 / 3.0

    def __post_init__(self):
        for name in ("sigma", "rho", "beta_l"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonFiniteStateError(f"LorenzParams.{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def to_dict(self) -> dict:
        return {"sigma": self.sigma, "rho": self.rho, "beta_l": self.beta_l}


def lorenz_rates(y: np.ndarray, p: LorenzParams) -> np.ndarray:
    """(σ(y−x), x(ρ−z)−y, xy−β z) for states with trailing dimension 3."""
    x, yy, z = y[..., 0], y[..., 1], y[..., 2]
    return np.stack(
        (p.sigma * (yy - x), x * (p.rho - z) - yy, x * yy - p.beta_l * z), axis=-1
    )


def lorenz_field(state, p: LorenzParams) -> np.ndarray:
    return lorenz_rates(np.asarray(state, dtype=float), p)


@dataclass(frozen=True)
class LorenzField:
    """Autonomous :class:`~setlerkit.interfaces.VectorField` wrapper."""
    params: LorenzParams

    def __call__(self, tau: float, y: np.ndarray) -> np.ndarray:
        return lorenz_rates(y, self.params)


def lorenz_jacobian(state, p: LorenzParams) -> np.ndarray:
    x, y, z = (float(v) for v in state)
    return np.array(
        [
            [-p.sigma, p.sigma, 0.0],
            [p.rho - z, -1.0, -x],
            [y, x, -p.beta_l],
        ]
    )


def lorenz_fixed_points(p: LorenzParams) -> list[np.ndarray]:
    """The origin, plus C± = (±c, ±c, ρ−1) with c = √(β(ρ−1)) when that is real."""
    if p.beta_l == 0:
        raise ValueError("beta_l must be non-zero for the fixed-point formulas")
    points = [np.zeros(3)]
    if p.beta_l * (p.rho - 1.0) > 0:
        c = math.sqrt(p.beta_l * (p.rho - 1.0))
        points.append(np.array([c, c, p.rho - 1.0]))
        points.append(np.array([-c, -c, p.rho - 1.0]))
    return points


def lorenz_divergence(p: LorenzParams) -> float:
    """Constant phase-space divergence −(σ + 1 + β)."""
    return -(p.sigma + 1.0 + p.beta_l)
