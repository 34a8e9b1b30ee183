"""Attractor point clouds and their side-by-side comparison.

A cloud is the post-transient part of one RK4 integration. Setler states are
emitted in Cartesian coordinates; Lorenz states already are. The cloud keeps
the native state at its first retained node so the comparison can restart
the flow there for the exponent estimate.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from ..analysis.lyapunov import DEFAULT_D0, DEFAULT_RENORM_EVERY, largest_lyapunov
from ..dynamics.continuous import integrate_field
from ..dynamics.fields import DEFAULT_DIVERGENCE_BOUND, SetlerField
from ..errors import DivergenceError, NonFiniteStateError
from ..interfaces import (
    SetlerParams,
    SphericalState,
    TimeGrid,
    VectorField,
    spherical_array_to_cartesian,
)
from ..parallel import run_jobs
from .lorenz import LorenzField, LorenzParams

logger = logging.getLogger(__name__)

SystemName = Literal["lorenz", "setler"]
SYSTEMS = ("lorenz", "setler")
AXES = ("x", "y", "z")
DEFAULT_LYAPUNOV_SPAN = 50.0
LOBE_NOTE = "lobe structure is not judged automatically; inspect the emitted point clouds"

SystemParams = Union[LorenzParams, SetlerParams]


def system_field(system: SystemName, params: SystemParams) -> VectorField:
    if system == "lorenz":
        if not isinstance(params, LorenzParams):
            raise TypeError("the lorenz system needs LorenzParams")
        return LorenzField(params)
    if system == "setler":
        if not isinstance(params, SetlerParams):
            raise TypeError("the setler system needs SetlerParams")
        return SetlerField(params)
    raise ValueError(f"system must be one of {SYSTEMS}, got {system!r}")


@dataclass(frozen=True, eq=False)
class CloudMeta:
    system: SystemName
    params: SystemParams
    transient: float
    h: float
    start: np.ndarray
    t_start: float

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "params": self.params.to_dict(),
            "transient": self.transient,
            "h": self.h,
            "start": [float(v) for v in self.start],
            "t_start": self.t_start,
        }


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Post-transient attractor samples as an (N, 3) Cartesian array."""
    points: np.ndarray
    meta: CloudMeta

    def __post_init__(self):
        points = np.array(self.points, dtype=float, copy=True).reshape(-1, 3)
        if len(points) == 0:
            raise ValueError("PointCloud must contain at least one point")
        if not np.all(np.isfinite(points)):
            raise NonFiniteStateError("PointCloud points must be finite")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return len(self.points)

    def bbox(self) -> dict[str, tuple[float, float]]:
        """Per-axis (min, max) extents."""
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        return {axis: (float(lo[i]), float(hi[i])) for i, axis in enumerate(AXES)}


def attractor_sample(
    system: SystemName,
    params: SystemParams,
    s0: Union[SphericalState, np.ndarray, tuple],
    grid: TimeGrid,
    transient: float,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
) -> PointCloud:
    """Integrate with RK4 and keep the nodes strictly after ``transient``.

    ``transient`` is a time span from ``grid.t0``; a value of span − h keeps
    only the final node.

    Raises:
        ValueError: transient outside [0, span).
        DivergenceError: the integration blew up.
    """
    if not 0.0 <= transient < grid.span:
        raise ValueError(
            f"transient must lie in [0, {grid.span:g}) for this grid, got {transient}"
        )
    y0 = s0.as_array() if isinstance(s0, SphericalState) else np.asarray(s0, dtype=float)
    times, values = integrate_field(
        system_field(system, params), y0, grid, method="rk4", divergence_bound=divergence_bound
    )
    first = int(math.floor(transient / grid.h + 1e-9)) + 1
    if first >= len(times):
        raise ValueError(f"transient {transient} leaves no samples on this grid")

    kept = values[first:]
    points = spherical_array_to_cartesian(kept) if system == "setler" else kept
    meta = CloudMeta(
        system=system,
        params=params,
        transient=transient,
        h=grid.h,
        start=values[first].copy(),
        t_start=float(times[first]),
    )
    logger.debug("%s cloud: kept %d of %d nodes", system, len(kept), len(times))
    return PointCloud(points, meta)


@dataclass
class ComparisonReport:
    bbox_a: dict[str, tuple[float, float]]
    bbox_b: dict[str, tuple[float, float]]
    largest_lyapunov_a: float
    largest_lyapunov_b: float
    lobe_note: str = LOBE_NOTE
    summary: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "bbox_a": {k: list(v) for k, v in self.bbox_a.items()},
            "bbox_b": {k: list(v) for k, v in self.bbox_b.items()},
            "largest_lyapunov_a": self.largest_lyapunov_a,
            "largest_lyapunov_b": self.largest_lyapunov_b,
            "lobe_note": self.lobe_note,
            "summary": self.summary,
        }


def _exponent_job(job: tuple) -> tuple[float, str]:
    meta, span, d0, renorm_every, bound = job
    grid = TimeGrid(meta.t_start, meta.t_start + span, meta.h)
    try:
        result = largest_lyapunov(
            system_field(meta.system, meta.params), meta.start, grid,
            d0=d0, renorm_every=renorm_every, divergence_bound=bound,
        )
    except DivergenceError as exc:
        return math.nan, str(exc)
    return result.exponent, ""


def compare_attractors(
    a: PointCloud,
    b: PointCloud,
    lyapunov_span: float = DEFAULT_LYAPUNOV_SPAN,
    renorm_every: int = DEFAULT_RENORM_EVERY,
    d0: float = DEFAULT_D0,
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
    workers: int = 1,
) -> ComparisonReport:
    """Extents and largest exponents of two clouds.

    Each exponent is estimated by restarting the cloud's flow at its first
    retained state for ``lyapunov_span`` time units. An estimate that blows
    up is reported as NaN with a warning.
    """
    jobs = [(c.meta, lyapunov_span, d0, renorm_every, divergence_bound) for c in (a, b)]
    (exp_a, err_a), (exp_b, err_b) = run_jobs(_exponent_job, jobs, workers)

    warnings = []
    for label, err in (("a", err_a), ("b", err_b)):
        if err:
            msg = f"exponent estimate for cloud {label} diverged: {err}"
            logger.warning(msg)
            warnings.append(msg)

    summary = {
        "systems": [a.meta.system, b.meta.system],
        "n_points": [len(a), len(b)],
        "lyapunov_span": lyapunov_span,
        "renorm_every": renorm_every,
        "d0": d0,
        "positive_exponent": [bool(exp_a > 0), bool(exp_b > 0)],
        "warnings": warnings,
    }
    return ComparisonReport(
        bbox_a=a.bbox(),
        bbox_b=b.bbox(),
        largest_lyapunov_a=exp_a,
        largest_lyapunov_b=exp_b,
        summary=summary,
    )
