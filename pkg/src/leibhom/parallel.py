"""Order-preserving map over worker processes, capped by LEIBHOM_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def worker_count() -> int:
    env = os.environ.get("LEIBHOM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"LEIBHOM_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def parallel_map(fn: Callable, items: Sequence) -> list:
    """``[fn(x) for x in items]``; results come back in input order regardless of scheduling."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
