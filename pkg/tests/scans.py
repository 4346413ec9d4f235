"""Scans shared by several test modules; each range is computed once per session."""

import time
from functools import lru_cache

from abctrees.search import scan

# Wall time of the first (uncached) computation of each range.
ELAPSED: dict[tuple[int, int], float] = {}


@lru_cache(maxsize=None)
def cached_scan(t_from: int, t_to: int):
    start = time.perf_counter()
    result = scan(t_from, t_to)
    ELAPSED[t_from, t_to] = time.perf_counter() - start
    return result
