"""Bifurcation scan of the forced map over λ.

All λ columns are iterated together as one (n_lambda, 3) array. A column that
leaves the bounded region is frozen, flagged, and reported with no samples.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..dynamics.discrete import map_step_array
from ..dynamics.fields import DEFAULT_DIVERGENCE_BOUND
from ..interfaces import SetlerParams, SphericalState
from ..parallel import chunk_bounds, run_jobs
from ..utils import wrap_angles

logger = logging.getLogger(__name__)

DEFAULT_TRANSIENT = 500
DEFAULT_KEEP = 200
DEFAULT_N_LAMBDA = 1000


@dataclass(frozen=True, eq=False)
class BifurcationData:
    """Post-transient wrapped-α samples for each λ on the sweep grid.

    Attributes:
        param_values: λ grid, shape (n_lambda,).
        samples: one array per λ; length ``keep`` or 0 for diverged columns.
        diverged: boolean flag per λ.
    """
    param_values: np.ndarray
    samples: tuple[np.ndarray, ...]
    diverged: np.ndarray
    warnings: list[str] = field(default_factory=list)

    def dispersion(self) -> np.ndarray:
        """Sample standard deviation per λ (NaN for diverged columns)."""
        return np.array([np.std(s, ddof=1) if len(s) > 1 else np.nan for s in self.samples])

    def rows(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Long-format columns (lambda, sample_index, alpha_wrapped) for CSV output."""
        lams, idx, vals = [], [], []
        for lam, s in zip(self.param_values, self.samples):
            lams.append(np.full(len(s), lam))
            idx.append(np.arange(len(s)))
            vals.append(s)
        if not lams:
            return np.empty(0), np.empty(0, dtype=int), np.empty(0)
        return np.concatenate(lams), np.concatenate(idx), np.concatenate(vals)


def _scan_chunk(job: tuple) -> tuple[np.ndarray, np.ndarray]:
    """Iterate a contiguous block of λ columns; returns (samples, diverged)."""
    p_base, lams, s0, transient, keep, bound = job
    n = len(lams)
    y = np.tile(s0, (n, 1))
    alive = np.ones(n, dtype=bool)
    samples = np.empty((n, keep), dtype=float)

    for k in range(transient + keep):
        if k >= transient:
            samples[:, k - transient] = wrap_angles(y[:, 0])
        nxt = map_step_array(y, p_base, k, lam=lams)
        with np.errstate(invalid="ignore"):
            bad = ~np.all(np.isfinite(nxt), axis=1) | np.any(np.abs(nxt) > bound, axis=1)
        alive &= ~bad
        # frozen columns keep their last finite state
        y = np.where(alive[:, None], nxt, y)
    return samples, ~alive


def bifurcation_scan(
    p_base: SetlerParams,
    lambda_range: tuple[float, float] = (0.5, 1.5),
    n_lambda: int = DEFAULT_N_LAMBDA,
    transient: int = DEFAULT_TRANSIENT,
    keep: int = DEFAULT_KEEP,
    s0: SphericalState = SphericalState(0.1, 0.2, 4.24),
    divergence_bound: float = DEFAULT_DIVERGENCE_BOUND,
    workers: int = 1,
) -> BifurcationData:
    """Sweep λ uniformly over ``lambda_range`` (endpoints included)."""
    if n_lambda < 2:
        raise ValueError(f"n_lambda must be >= 2, got {n_lambda}")
    if keep < 1:
        raise ValueError(f"keep must be >= 1, got {keep}")
    if transient < 0:
        raise ValueError(f"transient must be >= 0, got {transient}")

    lams = np.linspace(lambda_range[0], lambda_range[1], n_lambda)
    start = s0.as_array()
    jobs = [
        (p_base, lams[a:b], start, transient, keep, divergence_bound)
        for a, b in chunk_bounds(n_lambda, max(1, workers))
    ]
    parts = run_jobs(_scan_chunk, jobs, workers)
    all_samples = np.concatenate([s for s, _ in parts])
    diverged = np.concatenate([d for _, d in parts])

    samples = tuple(
        np.empty(0) if bad else row.copy() for row, bad in zip(all_samples, diverged)
    )
    warnings = []
    if diverged.any():
        msg = f"{int(diverged.sum())} of {n_lambda} lambda values diverged (no samples recorded)"
        logger.warning(msg)
        warnings.append(msg)
    logger.info("Bifurcation scan over %d lambda values complete", n_lambda)
    return BifurcationData(lams, samples, diverged, warnings)
