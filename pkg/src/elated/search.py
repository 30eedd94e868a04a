"""Deterministic parallel helpers.

Work is split into ordered blocks.  Results are combined in block order,
so the outcome never depends on the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], jobs: Sequence[T], workers: int = 1) -> list[R]:
    """``[fn(j) for j in jobs]``, optionally fanned out to worker processes."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def first_hit(
    fn: Callable[[T], R | None],
    blocks: Iterable[T],
    workers: int = 1,
) -> tuple[int, R] | None:
    """Return ``(index, fn(block))`` for the first block whose result is not None.

    Blocks are evaluated in batches of ``workers``; within a batch the
    lowest block index wins, so the answer is the same as a serial scan.
    ``fn`` must return the minimal hit inside its own block.
    """
    it: Iterator[T] = iter(blocks)
    index = 0
    if workers <= 1:
        for block in it:
            res = fn(block)
            if res is not None:
                return index, res
            index += 1
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        while True:
            batch = [b for _, b in zip(range(workers), it)]
            if not batch:
                return None
            for offset, res in enumerate(pool.map(fn, batch)):
                if res is not None:
                    return index + offset, res
            index += len(batch)
