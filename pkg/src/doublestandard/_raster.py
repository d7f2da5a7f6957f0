"""Deterministic threaded drivers for the compiled raster kernels.

Rows are split into fixed blocks and each block is written in place by a
nogil kernel, so the result does not depend on the number of threads or on
scheduling.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .config import DEFAULT_CONFIG

THREADS_ENV = "TONGUE_ATLAS_THREADS"


def thread_count(threads=None):
    if threads is not None:
        n = int(threads)
    else:
        env = os.environ.get(THREADS_ENV)
        n = int(env) if env else (os.cpu_count() or 1)
    if n < 1:
        raise ValueError("thread count must be >= 1")
    return n


def cell_centers(lo, hi, n):
    """Centers of n equal cells on [lo, hi]."""
    return lo + (np.arange(n, dtype=float) + 0.5) * ((hi - lo) / n)


def _run_blocks(fn, n_rows, threads):
    n = thread_count(threads)
    block = max(1, min(16, -(-n_rows // n)))
    bounds = [(lo, min(lo + block, n_rows)) for lo in range(0, n_rows, block)]
    if n == 1:
        for lo, hi in bounds:
            fn(lo, hi)
        return
    with ThreadPoolExecutor(max_workers=n) as pool:
        for fut in [pool.submit(fn, lo, hi) for lo, hi in bounds]:
            fut.result()


@dataclass(frozen=True)
class TongueGrid:
    """Raw tongue classification of a grid; row i belongs to b_vals[i]."""

    a_vals: np.ndarray
    b_vals: np.ndarray
    outcome: np.ndarray
    period: np.ndarray
    knum: np.ndarray
    multiplier: np.ndarray

    def type_mask(self, k, p):
        return (self.outcome == K.T_IN) & (self.period == p) & (self.knum == k)

    @property
    def undecided(self):
        return self.outcome == K.T_UNDECIDED


def tongue_grid(a_vals, b_vals, cfg=DEFAULT_CONFIG, threads=None):
    a_vals = np.ascontiguousarray(a_vals, dtype=float)
    b_vals = np.ascontiguousarray(b_vals, dtype=float)
    shape = (b_vals.size, a_vals.size)
    outcome = np.empty(shape, dtype=np.int8)
    period = np.empty(shape, dtype=np.int32)
    knum = np.empty(shape, dtype=np.int64)
    lam = np.empty(shape, dtype=float)

    def work(lo, hi):
        K.tongue_rows(a_vals, b_vals, lo, hi, outcome, period, knum, lam,
                      cfg.max_transient, cfg.max_period, cfg.cycle_tol, cfg.root_tol,
                      cfg.orbit_budget, cfg.escape_log_threshold)

    _run_blocks(work, shape[0], threads)
    return TongueGrid(a_vals, b_vals, outcome, period, knum, lam)


@dataclass(frozen=True)
class OrbitGrid:
    a_vals: np.ndarray
    b_vals: np.ndarray
    cls: np.ndarray
    period: np.ndarray


def orbit_grid(a_vals, b_vals, cfg=DEFAULT_CONFIG, threads=None):
    a_vals = np.ascontiguousarray(a_vals, dtype=float)
    b_vals = np.ascontiguousarray(b_vals, dtype=float)
    shape = (b_vals.size, a_vals.size)
    cls = np.empty(shape, dtype=np.int8)
    period = np.empty(shape, dtype=np.int32)

    def work(lo, hi):
        K.orbit_rows(a_vals, b_vals, lo, hi, cls, period, cfg.orbit_budget, cfg.max_period,
                     cfg.cycle_tol, cfg.escape_log_threshold, cfg.on_circle_tol)

    _run_blocks(work, shape[0], threads)
    return OrbitGrid(a_vals, b_vals, cls, period)
