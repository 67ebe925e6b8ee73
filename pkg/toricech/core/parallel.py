from typing import Callable, Iterable, List, Optional, TypeVar

import os
import sys

from concurrent.futures import ProcessPoolExecutor


__all__ = [
    'available_jobs',
    'resolve_jobs',
    'parallel_map',
]


T = TypeVar('T')
R = TypeVar('R')


def _never(result) -> bool:
    return False


def available_jobs() -> int:
    if hasattr(os, 'sched_getaffinity'):
        return max(1, len(os.sched_getaffinity(0)))
    return max(1, os.cpu_count() or 1)


def resolve_jobs(jobs: Optional[int]) -> int:
    if jobs is None or jobs <= 0:
        return available_jobs()
    return jobs


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = 1,
                 stop: Optional[Callable[[R], bool]] = None, verbose: bool = False) -> List[R]:
    """Apply ``fn`` to ``items`` and return the results in input order.

    With ``stop``, results end at the first one, in input order, for which
    ``stop`` holds; items after it that have not started are cancelled.
    """
    items = list(items)
    jobs = min(resolve_jobs(jobs), len(items))
    stop = stop if stop is not None else _never
    results = []
    if jobs <= 1:
        for item in items:
            results.append(fn(item))
            if stop(results[-1]):
                break
        return results
    if verbose:
        print(f'parallel mode | {jobs} workers', file=sys.stderr, flush=True)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, item) for item in items]
        for future in futures:
            results.append(future.result())
            if stop(results[-1]):
                for pending in futures:
                    pending.cancel()
                break
    return results
