"""Order-preserving worker pool."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "HUSIMI_CWT_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    """Explicit value, else ``$HUSIMI_CWT_THREADS``, else 1."""
    if threads is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        threads = int(env) if env else 1
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    return threads


def parallel_map(fn, items, threads: int | None = None) -> list:
    """``[fn(x) for x in items]``; results keep input order whatever the completion order."""
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
