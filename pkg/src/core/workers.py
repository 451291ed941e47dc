"""Thread pool helpers.

Results always come back in input order, so reductions over them are deterministic.
"""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor

from src.core.settings import settings


def parallel_map[T, R](fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map ``fn`` over ``items`` with at most ``HEIS_THREADS`` workers."""
    items = list(items)
    if settings.THREADS == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(settings.THREADS, len(items))) as pool:
        return list(pool.map(fn, items))
