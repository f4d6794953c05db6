"""Deterministic fan-out of independent chunks over a process pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def map_chunks(fn: Callable[[T], R], chunks: Iterable[T], workers: int = 1) -> list[R]:
    """Apply ``fn`` to each chunk; results come back in chunk order.

    ``fn`` must be picklable when ``workers > 1``.
    """
    chunks = list(chunks)
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))
