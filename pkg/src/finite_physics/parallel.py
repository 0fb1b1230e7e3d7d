"""Deterministic parallel map over index ranges.

Work is always cut into the same fixed-size chunks regardless of the
worker count, and results come back in chunk order, so any reduction
performed by the caller is bit-identical for 1 or N workers.
"""

from concurrent.futures import ProcessPoolExecutor

DEFAULT_CHUNK = 1 << 16


def chunk_ranges(start, stop, chunk=DEFAULT_CHUNK):
    """Split ``range(start, stop)`` into consecutive ``(lo, hi)`` pairs."""
    if chunk < 1:
        raise ValueError("chunk must be positive")
    return [(lo, min(lo + chunk, stop)) for lo in range(start, stop, chunk)]


def ordered_map(func, items, workers=1):
    """Apply ``func`` to every item, returning results in input order.

    ``func`` must be a module-level callable when ``workers > 1``.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))
