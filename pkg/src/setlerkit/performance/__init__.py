"""Runtime benchmarks for setlerkit experiments."""

from .benchmarks import (
    BENCHMARKS,
    RUNTIME_BUDGETS,
    BenchmarkResult,
    TimingStats,
    run_benchmark,
    run_benchmarks,
    time_call,
)

__all__ = [
    "BENCHMARKS",
    "RUNTIME_BUDGETS",
    "BenchmarkResult",
    "TimingStats",
    "run_benchmark",
    "run_benchmarks",
    "time_call",
]
