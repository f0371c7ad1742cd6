"""
Worker pool for independent numerical work units
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    return max(1, min(8, os.cpu_count() or 1))


class WorkerPool:
    """
    Thread pool whose results always come back in submission order.

    Callers reduce the returned list front to back, so a thread count never changes a
    result. threads=1 runs everything inline.
    """

    def __init__(self, threads: Optional[int] = None):
        """
        Initialize worker pool.

        Args:
            threads: Worker count, default min(8, cpu count)
        """
        if threads is None:
            threads = default_threads()
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        self.threads = threads
        logger.debug(f"WorkerPool initialized with {threads} thread(s)")

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Apply fn to every item.

        Args:
            fn: Function of one item
            items: Work units

        Returns:
            Results in item order
        """
        items = list(items)
        if self.threads == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=min(self.threads, len(items))) as executor:
            return list(executor.map(fn, items))
