"""Deterministic fan-out of independent numerical jobs.

Jobs are module-level callables applied to picklable arguments. Results come
back in input order whatever the worker count, so parallel and serial runs
produce identical artifacts.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

J = TypeVar("J")
R = TypeVar("R")


def run_jobs(fn: Callable[[J], R], jobs: Iterable[J], workers: int = 1) -> list[R]:
    """Apply ``fn`` to every job, preserving input order."""
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    n_workers = min(workers, len(jobs))
    logger.debug("Running %d jobs on %d worker processes", len(jobs), n_workers)
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, jobs))


def chunk_bounds(n_items: int, n_chunks: int) -> list[tuple[int, int]]:
    """Split range(n_items) into at most ``n_chunks`` contiguous (start, stop) pairs."""
    n_chunks = max(1, min(n_chunks, n_items))
    base, extra = divmod(n_items, n_chunks)
    bounds = []
    start = 0
    for i in range(n_chunks):
        stop = start + base + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds

