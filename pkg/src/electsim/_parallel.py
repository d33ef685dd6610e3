"""Deterministic work splitting for the Monte Carlo loops.

Every parallelizable loop draws one integer seed per work item up front from
the caller's generator; items are then evaluated from their own fresh
generators. Results are therefore identical for any worker count, and an
item can be replayed later from its recorded seed.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np


def spawn_seeds(rng: np.random.Generator, n: int) -> np.ndarray:
    """Pre-assigned per-item seeds drawn from ``rng``."""
    return rng.integers(0, 2**63, size=n, dtype=np.uint64)


def parallel_map(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Order-preserving map, optionally over a process pool."""
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
