"""Optional process-level parallelism, capped by ``NL_TORIC_THREADS``."""

import os
from concurrent.futures import ProcessPoolExecutor


def workers() -> int:
    try:
        return max(1, int(os.environ.get("NL_TORIC_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items):
    """``list(map(fn, items))``; results keep input order regardless of workers."""
    items = list(items)
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * n))))
