"""Order-preserving parallel map over a fork-based process pool."""

from __future__ import annotations

import multiprocessing as mp
import os
from concurrent.futures import ProcessPoolExecutor

__all__ = ["parallel_map", "default_workers"]

_TASK = None


def default_workers() -> int:
    return os.cpu_count() or 1


def _call(item):
    return _TASK(item)


def parallel_map(fn, items, workers: int | None = 1) -> list:
    """``[fn(x) for x in items]``, spread over ``workers`` processes.

    The callable is inherited by forked workers, so it may close over large
    read-only state (systems, caches) without pickling it. Results come back
    in input order.
    """
    items = list(items)
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(items) < 2 or "fork" not in mp.get_all_start_methods():
        return [fn(x) for x in items]
    global _TASK
    _TASK = fn
    try:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            return list(pool.map(_call, items))
    finally:
        _TASK = None
