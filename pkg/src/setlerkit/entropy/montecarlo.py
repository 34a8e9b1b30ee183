"""Seeded Monte Carlo estimators for the entropy integrals.

Each estimator draws points from a proposal density and returns the weights
integrand/proposal. Samples are split into batches, each with its own RNG
stream spawned from ``SeedSequence(seed, spawn_key=(stream,))``; batch sums
are reduced in batch order, so the estimate does not depend on the worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..parallel import chunk_bounds, run_jobs

DEFAULT_SEED = 0xC0FFEE


def gaussian_amplitude(sigma: float) -> float:
    """Peak (2πσ²)^{-3/2} of the normalized 3D Gaussian density."""
    return (2.0 * math.pi * sigma * sigma) ** -1.5


def _gaussian_gradient_weights(rng: np.random.Generator, n: int, params: dict) -> np.ndarray:
    # proposal N(0, σ²/2 I) ∝ exp(−r²/σ²), matching the f² factor of the integrand
    sigma = params["sigma"]
    points = rng.normal(0.0, sigma / math.sqrt(2.0), size=(n, 3))
    r2 = np.einsum("ij,ij->i", points, points)
    amp = gaussian_amplitude(sigma)
    weights = (r2 / sigma**4) * amp**2 * (math.pi * sigma * sigma) ** 1.5
    if not params["drop_exp_f"]:
        weights = weights * np.exp(-amp * np.exp(-r2 / (2.0 * sigma * sigma)))
    return weights


def _quadratic_weights(rng: np.random.Generator, n: int, params: dict) -> np.ndarray:
    # integrand 4r² e^{−r²} against proposal N(0, ½ I) = π^{-3/2} e^{−r²}
    points = rng.normal(0.0, math.sqrt(0.5), size=(n, 3))
    r2 = np.einsum("ij,ij->i", points, points)
    return 4.0 * r2 * math.pi**1.5


def _ball_exp_neg_f_weights(rng: np.random.Generator, n: int, params: dict) -> np.ndarray:
    # uniform in the ball of radius r_max; only |x| matters
    sigma, r_max = params["sigma"], params["r_max"]
    r = r_max * np.cbrt(rng.random(n))
    volume = 4.0 / 3.0 * math.pi * r_max**3
    return volume * np.exp(-gaussian_amplitude(sigma) * np.exp(-r * r / (2.0 * sigma * sigma)))


ESTIMATORS: dict[str, Callable[[np.random.Generator, int, dict], np.ndarray]] = {
    "gaussian_gradient": _gaussian_gradient_weights,
    "quadratic": _quadratic_weights,
    "ball_exp_neg_f": _ball_exp_neg_f_weights,
}


@dataclass(frozen=True)
class MCEstimate:
    value: float
    stderr: float
    n_samples: int


def _run_batch(job: tuple) -> tuple[float, float, int]:
    estimator, params, n, seed_seq = job
    rng = np.random.default_rng(seed_seq)
    weights = ESTIMATORS[estimator](rng, n, params)
    return float(np.sum(weights)), float(np.sum(weights * weights)), n


def monte_carlo(
    estimator: str,
    params: dict,
    n_samples: int,
    seed: int = DEFAULT_SEED,
    stream: int = 0,
    n_batches: int = 4,
    workers: int = 1,
) -> MCEstimate:
    """Mean and standard error of the named estimator's weights."""
    if estimator not in ESTIMATORS:
        raise ValueError(f"unknown estimator {estimator!r}")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    root = np.random.SeedSequence(seed, spawn_key=(stream,))
    bounds = chunk_bounds(n_samples, n_batches)
    children = root.spawn(len(bounds))
    jobs = [(estimator, params, b - a, child) for (a, b), child in zip(bounds, children)]
    parts = run_jobs(_run_batch, jobs, workers)

    total = sum(s for s, _, _ in parts)
    total_sq = sum(sq for _, sq, _ in parts)
    n = sum(c for _, _, c in parts)
    mean = total / n
    variance = max(total_sq / n - mean * mean, 0.0) * n / (n - 1)
    return MCEstimate(mean, math.sqrt(variance / n), n)
