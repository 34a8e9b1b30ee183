"""Core types for the Setler toolkit.

These types are shared by the discrete map, the continuous integrators, the
chaos diagnostics and the entropy functionals. All of them are immutable
value types; array-backed containers mark their buffers read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Literal, Protocol

import numpy as np

from .errors import NonFiniteStateError
from .utils import wrap_angle

# How the r-equation forcing is scaled: by the δ_f amplitude parameter, or by
# the declination state itself (the literal form of the first RK4 case).
RForcing = Literal["amplitude", "declination"]
R_FORCING_MODES = ("amplitude", "declination")


def _require_finite(owner: str, **values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteStateError(f"{owner}.{name} must be finite, got {value!r}")


class VectorField(Protocol):
    """Right-hand side F(τ, y) of an autonomous or forced ODE.

    ``y`` has trailing dimension 3; leading dimensions are batch axes and
    must be broadcast through unchanged.
    """

    def __call__(self, tau: float, y: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class SphericalState:
    """Position of a star in (right ascension, declination, distance).

    Attributes:
        alpha: Right ascension in radians. Never wrapped automatically.
        delta: Declination in radians. Not clamped to [-π/2, π/2].
        r: Radial distance in model units.
    """
    alpha: float
    delta: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "r", float(self.r))
        _require_finite("SphericalState", alpha=self.alpha, delta=self.delta, r=self.r)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.delta, self.r], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "SphericalState":
        return cls(float(values[0]), float(values[1]), float(values[2]))


@dataclass(frozen=True)
class CartesianState:
    """Cartesian position (x, y, z) in the same units as ``r``."""
    x: float
    y: float
    z: float

    def __post_init__(self):
        _require_finite("CartesianState", x=self.x, y=self.y, z=self.z)

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class SetlerParams:
    """Parameters of the forced Setler system.

    Attributes:
        lam: Nonlinearity strength λ.
        beta: α-forcing amplitude.
        gamma: δ-forcing amplitude.
        delta_f: r-forcing amplitude (distinct from the declination state).
        omega: Forcing angular frequency. Zero is allowed (constant phase).
        r_forcing: ``"amplitude"`` uses delta_f in the r-equation,
            ``"declination"`` uses the current declination instead.
    """
    lam: float
    beta: float = 0.0
    gamma: float = 0.0
    delta_f: float = 0.0
    omega: float = 0.0
    r_forcing: RForcing = "amplitude"

    def __post_init__(self):
        _require_finite(
            "SetlerParams",
            lam=self.lam, beta=self.beta, gamma=self.gamma,
            delta_f=self.delta_f, omega=self.omega,
        )
        if self.r_forcing not in R_FORCING_MODES:
            raise ValueError(
                f"r_forcing must be one of {R_FORCING_MODES}, got {self.r_forcing!r}"
            )

    def unforced(self) -> "SetlerParams":
        """Same λ with every forcing amplitude set to zero."""
        return replace(self, beta=0.0, gamma=0.0, delta_f=0.0, r_forcing="amplitude")

    def with_lambda(self, lam: float) -> "SetlerParams":
        return replace(self, lam=lam)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta_f": self.delta_f,
            "omega": self.omega,
            "r_forcing": self.r_forcing,
        }


@dataclass(frozen=True)
class LinearIncrements:
    """Per-step increments of the linear baseline model."""
    d_alpha: float
    d_delta: float
    d_r: float

    def __post_init__(self):
        _require_finite(
            "LinearIncrements", d_alpha=self.d_alpha, d_delta=self.d_delta, d_r=self.d_r
        )


@dataclass(frozen=True)
class Derivative:
    """Time derivatives (dα/dτ, dδ/dτ, dr/dτ)."""
    d_alpha: float
    d_delta: float
    d_r: float

    def __post_init__(self):
        _require_finite("Derivative", d_alpha=self.d_alpha, d_delta=self.d_delta, d_r=self.d_r)

    def as_array(self) -> np.ndarray:
        return np.array([self.d_alpha, self.d_delta, self.d_r], dtype=float)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t0, t0 + h, ..., t0 + n·h with n = floor((t1 − t0)/h)."""
    t0: float
    t1: float
    h: float

    def __post_init__(self):
        _require_finite("TimeGrid", t0=self.t0, t1=self.t1, h=self.h)
        if self.t1 <= self.t0:
            raise ValueError(f"t1 must be greater than t0, got t0={self.t0}, t1={self.t1}")
        if self.h <= 0:
            raise ValueError(f"h must be positive, got {self.h}")

    @property
    def n_steps(self) -> int:
        q = (self.t1 - self.t0) / self.h
        n = math.floor(q)
        # 0.3 / 0.1 evaluates to 2.9999999999999996
        if q - n > 1.0 - 1e-9:
            n += 1
        return int(n)

    @property
    def span(self) -> float:
        return self.t1 - self.t0

    def node(self, k: int) -> float:
        return self.t0 + k * self.h

    def nodes(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.n_steps + 1, dtype=float)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-indexed sequence of (α, δ, r) samples.

    ``values`` has shape (N, 3). For map iterations ``times`` holds integer
    step indices; for integrations it holds τ.
    """
    times: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        times = np.array(self.times, copy=True)
        values = np.array(self.values, dtype=float, copy=True).reshape(-1, 3)
        if times.ndim != 1 or len(times) == 0:
            raise ValueError("Trajectory must contain at least one sample")
        if len(times) != len(values):
            raise ValueError(
                f"times and states must have equal length, got {len(times)} and {len(values)}"
            )
        if len(times) > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("Trajectory times must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise NonFiniteStateError("Trajectory states must be finite")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[tuple[float, SphericalState]]:
        for t, row in zip(self.times, self.values):
            yield t.item(), SphericalState.from_array(row)

    @property
    def states(self) -> tuple[SphericalState, ...]:
        return tuple(SphericalState.from_array(row) for row in self.values)

    @property
    def alpha(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def delta(self) -> np.ndarray:
        return self.values[:, 1]

    @property
    def r(self) -> np.ndarray:
        return self.values[:, 2]

    @property
    def initial(self) -> SphericalState:
        return SphericalState.from_array(self.values[0])

    @property
    def final(self) -> SphericalState:
        return SphericalState.from_array(self.values[-1])

    def cartesian(self) -> np.ndarray:
        """(N, 3) array of Cartesian positions."""
        return spherical_array_to_cartesian(self.values)

    def head(self, n: int) -> "Trajectory":
        """First ``n`` samples (at least one)."""
        n = max(1, n)
        return Trajectory(self.times[:n], self.values[:n], dict(self.meta))

    def __repr__(self) -> str:
        return (
            f"Trajectory(n={len(self)}, t=[{self.times[0]}, {self.times[-1]}], "
            f"final={self.final})"
        )


def spherical_array_to_cartesian(values: np.ndarray) -> np.ndarray:
    """Vectorized conversion of (..., 3) spherical rows to Cartesian rows."""
    alpha, delta, r = values[..., 0], values[..., 1], values[..., 2]
    cos_delta = np.cos(delta)
    return np.stack(
        (r * cos_delta * np.cos(alpha), r * cos_delta * np.sin(alpha), r * np.sin(delta)),
        axis=-1,
    )


def spherical_to_cartesian(s: SphericalState) -> CartesianState:
    """x = r cosδ cosα, y = r cosδ sinα, z = r sinδ."""
    cos_delta = math.cos(s.delta)
    return CartesianState(
        x=s.r * cos_delta * math.cos(s.alpha),
        y=s.r * cos_delta * math.sin(s.alpha),
        z=s.r * math.sin(s.delta),
    )


def wrap_state(s: SphericalState) -> SphericalState:
    """Map α into [0, 2π); δ and r are returned unchanged."""
    return SphericalState(wrap_angle(s.alpha), s.delta, s.r)
