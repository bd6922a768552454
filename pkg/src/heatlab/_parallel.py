"""Order-preserving thread-pool map controlled by HEATLAB_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("HEATLAB_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"HEATLAB_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("HEATLAB_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def parallel_map(fn, items):
    """Apply fn to items, possibly in parallel; results keep input order."""
    items = list(items)
    workers = min(thread_count(), max(len(items), 1))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
