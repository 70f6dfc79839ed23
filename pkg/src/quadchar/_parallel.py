"""Deterministic chunked parallelism: items are split into contiguous chunks,
each chunk is folded independently, and partial results are merged in chunk
order, so the outcome never depends on scheduling.
"""

from concurrent.futures import ThreadPoolExecutor

__all__ = ["map_chunks", "split_evenly"]


def split_evenly(items, n: int) -> list:
    """At most n contiguous chunks covering items in order, all nonempty."""
    n = max(1, min(int(n), len(items)))
    size, rem = divmod(len(items), n)
    chunks = []
    start = 0
    for i in range(n):
        stop = start + size + (1 if i < rem else 0)
        chunks.append(items[start:stop])
        start = stop
    return chunks


def map_chunks(fn, items, threads: int = 1) -> list:
    """Apply fn to each chunk of items; results come back in chunk order."""
    if not items:
        return []
    if threads <= 1:
        return [fn(items)]
    chunks = split_evenly(items, threads)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        return list(pool.map(fn, chunks))
