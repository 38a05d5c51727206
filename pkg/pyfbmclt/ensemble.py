__author__ = 'pyfbmclt developers'

from concurrent.futures import ProcessPoolExecutor
from itertools import repeat

import numpy as np

from .utils import derive_seed, dlog


def _run_chunk(task, master_seed, indices):
    return [task(derive_seed(master_seed, index)) for index in indices]


def _chunks(count, workers):
    size = -(-count // workers)
    return [range(start, min(start + size, count))
            for start in range(0, count, size)]


def run_ensemble(task, master_seed, count, workers=1):
    """
    task(seed) for the seeds of paths 0..count-1 of the ensemble keyed by
    master_seed. Results are stacked in index order, so every reduction is
    the same whatever the number of workers.

    ``task`` must be picklable when workers > 1.
    """
    if count < 1:
        return np.empty(0)
    workers = max(1, min(int(workers), count))
    if workers == 1:
        results = _run_chunk(task, master_seed, range(count))
    else:
        dlog("ensemble of %d draws on %d workers", count, workers)
        chunks = _chunks(count, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_chunk, repeat(task), repeat(master_seed),
                             chunks)
            results = [value for part in parts for value in part]
    return np.asarray(results, dtype=np.float64)
