"""Exception hierarchy for setlerkit.

Numerical failures carry enough context (last finite index/time, partial
results, achieved tolerance) for the CLI to report them and keep partial
artifacts on disk.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .interfaces import Trajectory


class SetlerError(Exception):
    """Base class for all setlerkit errors."""


class NonFiniteStateError(SetlerError, ValueError):
    """A state or parameter set was constructed with NaN or infinite values."""


class ConfigError(SetlerError, ValueError):
    """Invalid or unknown configuration. The CLI maps this to exit code 2."""


class FitError(SetlerError, ValueError):
    """Preconditions of an exponential or growth-rate fit were violated."""


class DivergenceError(SetlerError, RuntimeError):
    """Iteration or integration left the finite/bounded region.

    Attributes:
        last_finite_index: Index (step or sample) of the last finite state.
        last_finite_time: Time value (τ or step index) of that state.
        partial: Trajectory up to and including the last finite state, if any.
    """

    def __init__(
        self,
        message: str,
        last_finite_index: int,
        last_finite_time: float,
        partial: Optional["Trajectory"] = None,
    ):
        super().__init__(message)
        self.last_finite_index = last_finite_index
        self.last_finite_time = last_finite_time
        self.partial = partial


class QuadratureError(SetlerError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved_error: float, requested_error: float):
        super().__init__(message)
        self.achieved_error = achieved_error
        self.requested_error = requested_error
