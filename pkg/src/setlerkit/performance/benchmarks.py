"""Runtime benchmarks for the acceptance experiments.

Each benchmark runs one experiment at its acceptance size and reports
wall-clock statistics against a runtime budget in seconds.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..analysis.bifurcation import bifurcation_scan
from ..analysis.hyperbolicity import jacobian_autonomous
from ..analysis.lyapunov import LOGISTIC, lyapunov_1d
from ..dynamics.continuous import integrate
from ..entropy.functionals import EntropySpec, GaussianProfile, f_functional_gaussian
from ..interfaces import SetlerParams, SphericalState, TimeGrid

RUNTIME_BUDGETS: dict[str, float] = {
    "jacobian": 1.0,
    "rk4_case1": 5.0,
    "lyapunov_logistic": 60.0,
    "bifurcation": 30.0,
    "entropy_f": 30.0,
}


@dataclass
class TimingStats:
    """Wall-clock statistics in seconds."""
    min: float
    median: float
    p95: float
    mean: float
    repeats: int


@dataclass
class BenchmarkResult:
    name: str
    budget_s: float
    stats: TimingStats

    @property
    def within_budget(self) -> bool:
        return self.stats.median <= self.budget_s


def _percentile(data: list[float], pct: int) -> float:
    if not data:
        return 0.0
    if len(data) == 1:
        return data[0]
    quantile_points = statistics.quantiles(sorted(data), n=100)
    return quantile_points[min(pct - 1, len(quantile_points) - 1)]


def time_call(fn: Callable[[], object], repeats: int = 3) -> TimingStats:
    """Run ``fn`` ``repeats`` times and summarize the durations."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    durations = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        durations.append(time.perf_counter() - start)
    return TimingStats(
        min=min(durations),
        median=statistics.median(durations),
        p95=_percentile(durations, 95),
        mean=statistics.mean(durations),
        repeats=repeats,
    )


def _jacobian() -> None:
    for lam in np.linspace(0.1, 5.0, 10):
        jacobian_autonomous(SphericalState(0.0, 0.0, 0.0), float(lam))


def _rk4_case1() -> None:
    p = SetlerParams(lam=1.0, beta=23 / 8, gamma=8 / 3, delta_f=0.5, omega=0.5)
    integrate(SphericalState(0.1, 0.2, 0.3), TimeGrid(0.0, 10.0, 0.01), p)


def _lyapunov_logistic() -> None:
    lyapunov_1d(LOGISTIC, 0.1, 4.0, 100_000, 1000)


def _bifurcation() -> None:
    p = SetlerParams(lam=1.0, beta=0.5, gamma=0.5, delta_f=0.5, omega=1.0)
    bifurcation_scan(p)


def _entropy_f() -> None:
    f_functional_gaussian(GaussianProfile(1.0), EntropySpec())


BENCHMARKS: dict[str, Callable[[], None]] = {
    "jacobian": _jacobian,
    "rk4_case1": _rk4_case1,
    "lyapunov_logistic": _lyapunov_logistic,
    "bifurcation": _bifurcation,
    "entropy_f": _entropy_f,
}


def run_benchmark(name: str, repeats: int = 1) -> BenchmarkResult:
    if name not in BENCHMARKS:
        raise ValueError(f"unknown benchmark {name!r}; choose from {sorted(BENCHMARKS)}")
    return BenchmarkResult(name, RUNTIME_BUDGETS[name], time_call(BENCHMARKS[name], repeats))


def run_benchmarks(names: Optional[list[str]] = None, repeats: int = 1) -> list[BenchmarkResult]:
    return [run_benchmark(name, repeats) for name in names or list(BENCHMARKS)]
