"""Pairwise integrated combination matrices (distance and Gram matrices).

Work is scheduled in block rows: the row range is partitioned into
contiguous blocks pushed onto a global queue, and idle workers steal
whole blocks from it.  Per-pair cost is unpredictable (it depends on the
two PCFs' sizes), which is why stealing happens at block rather than
entry granularity.  Every entry has exactly one writer and a fixed
summation order, so the output is bitwise identical for any worker
count.

Jobs report progress once per completed block (monotone, ending at 1.0)
and can be cancelled between blocks, in which case partial work is
discarded.
"""

from __future__ import annotations

import math
import os
import threading
from collections import deque

import numpy as np

from . import errors
from ._backend import OP_INNER, OP_LP, get_backend
from .integrate import CombinationIntegral

__all__ = [
    "PairwiseMatrix",
    "MatrixJob",
    "pdist",
    "pdist_job",
    "l2_kernel",
    "l2_kernel_job",
    "pairwise",
    "pairwise_job",
    "progress_subscribe",
    "resolve_workers",
]

_INF = math.inf

# Below this many (pairs x average size) units the scheduling overhead
# outweighs any parallel gain; run single-worker.
_SERIAL_THRESHOLD = 1 << 15

_BLOCK_BYTE_BUDGET = 64 << 20


def resolve_workers(workers=None):
    """Explicit argument, else MASSPCF_THREADS, else the CPU count."""
    if workers is not None:
        n = int(workers)
    else:
        env = os.environ.get("MASSPCF_THREADS")
        n = int(env) if env else (os.cpu_count() or 1)
    if n < 1:
        raise ValueError(f"worker count must be >= 1, got {n}")
    return n


class PairwiseMatrix:
    """Dense M x M result matrix plus its symmetry flag."""

    def __init__(self, data, symmetric, entries_computed=0):
        self.data = data
        self.symmetric = symmetric
        self.entries_computed = entries_computed

    @property
    def shape(self):
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.data, dtype=dtype)

    def __getitem__(self, idx):
        return self.data[idx]

    def __repr__(self):
        return f"PairwiseMatrix(shape={self.data.shape}, symmetric={self.symmetric})"


def _check_collection(collection):
    coll = list(collection)
    if not coll:
        raise errors.EmptyCollection("pairwise matrix of an empty collection")
    dtype = coll[0].dtype
    for f in coll:
        if f.dtype != dtype:
            raise errors.MixedPrecision(
                "collection mixes 32- and 64-bit PCFs"
            )
    return coll, dtype


class MatrixJob:
    """A pending/running pairwise-matrix computation.

    Build via pdist_job / l2_kernel_job / pairwise_job, optionally
    subscribe progress sinks and keep a handle for cancellation, then
    call :meth:`run`.
    """

    def __init__(self, collection, *, op=None, p=1.0, apply_root=False,
                 diag=False, a=0.0, b=_INF, integral=None, symmetric=True):
        self._coll, self._dtype = _check_collection(collection)
        if math.isnan(a) or math.isinf(a) or a < 0.0 or not a < b:
            raise errors.InvalidBounds(
                f"bounds must satisfy 0 <= a < b, got [{a}, {b})"
            )
        self._op = op
        self._p = float(p)
        self._apply_root = apply_root
        self._diag = diag
        self._a = float(a)
        self._b = float(b)
        self._integral = integral
        self.symmetric = symmetric if integral is None else integral.symmetric
        self._sinks = []
        self._cancel = threading.Event()
        self._lock = threading.Lock()
        self.entries_computed = 0

    def subscribe(self, sink):
        """Register a callback receiving fractions in [0, 1], monotone,
        at least once per completed block and finally with 1.0.  May be
        invoked from worker threads."""
        self._sinks.append(sink)

    def cancel(self):
        """Request cancellation; honored at the next block boundary."""
        self._cancel.set()

    @property
    def cancelled(self):
        return self._cancel.is_set()

    # -- execution ---------------------------------------------------

    def _blocks(self, M, workers):
        height = max(1, math.ceil(M / (8 * workers)))
        itemsize = np.dtype(self._dtype).itemsize
        max_height = max(1, _BLOCK_BYTE_BUDGET // max(1, M * itemsize))
        height = min(height, max_height)
        return [(r0, min(r0 + height, M)) for r0 in range(0, M, height)]

    def _entry_custom(self, i, j):
        return self._integral(self._coll[i], self._coll[j])

    def run(self, workers=None):
        workers = resolve_workers(workers)
        coll = self._coll
        M = len(coll)
        total_points = sum(f.size for f in coll)
        if M * (total_points // M) < _SERIAL_THRESHOLD:
            workers = 1
        out = np.zeros((M, M), dtype=self._dtype)
        blocks = deque(self._blocks(M, workers))
        n_blocks = len(blocks)
        done = [0]
        entries = [0]
        failures = []
        packed = None
        if self._integral is None:
            packed = get_backend().pack(coll)

        def run_block(r0, r1):
            if self._integral is None:
                err = get_backend().fill_block(
                    packed, r0, r1, self._op, self._p, self._apply_root,
                    self._diag, self._a, self._b, out,
                )
                if err is not None:
                    raise self._divergence_error(err)
                n = sum(
                    (M - (i if self._diag else i + 1)) for i in range(r0, r1)
                )
            else:
                n = 0
                for i in range(r0, r1):
                    if self.symmetric:
                        js = range(i, M)
                    else:
                        js = range(M)
                    for j in js:
                        val = self._entry_custom(i, j)
                        out[i, j] = val
                        if self.symmetric:
                            out[j, i] = val
                        n += 1
            return n

        def worker_loop():
            while not failures and not self._cancel.is_set():
                try:
                    r0, r1 = blocks.popleft()
                except IndexError:
                    return
                try:
                    n = run_block(r0, r1)
                except BaseException as exc:  # propagated after join
                    failures.append(exc)
                    return
                with self._lock:
                    done[0] += 1
                    entries[0] += n
                    frac = done[0] / n_blocks
                    for sink in self._sinks:
                        sink(frac)

        if workers == 1:
            worker_loop()
        else:
            threads = [
                threading.Thread(target=worker_loop, daemon=True)
                for _ in range(workers)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()

        if failures:
            raise failures[0]
        if self._cancel.is_set():
            raise errors.Cancelled("matrix job cancelled; partial work discarded")
        self.entries_computed = entries[0]
        return PairwiseMatrix(out, self.symmetric, entries[0])

    def _divergence_error(self, pair):
        i, j = int(pair[0]), int(pair[1])
        if self._b == _INF:
            return errors.DivergentIntegral(
                f"integral of pair ({i}, {j}) diverges on [{self._a}, inf)",
                pair=(i, j),
            )
        return errors.NonFinite(f"integral of pair ({i}, {j}) is not finite")


def pdist_job(collection, p=1.0, a=0.0, b=_INF) -> MatrixJob:
    """Job computing the L_p distance matrix (diagonal exactly 0, upper
    triangle computed once and mirrored)."""
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    return MatrixJob(collection, op=OP_LP, p=p, apply_root=True, diag=False,
                     a=a, b=b)


def pdist(collection, p=1.0, workers=None, a=0.0, b=_INF) -> PairwiseMatrix:
    """Pairwise L_p distance matrix over [a, b); L_1 by default."""
    return pdist_job(collection, p=p, a=a, b=b).run(workers)


def l2_kernel_job(collection, a=0.0, b=_INF) -> MatrixJob:
    """Job computing the L_2 Gram (inner product) matrix including the
    diagonal."""
    return MatrixJob(collection, op=OP_INNER, p=0.0, apply_root=False,
                     diag=True, a=a, b=b)


def l2_kernel(collection, workers=None, a=0.0, b=_INF) -> PairwiseMatrix:
    """Pairwise L_2 inner product matrix over [a, b)."""
    return l2_kernel_job(collection, a=a, b=b).run(workers)


def pairwise_job(collection, integral: CombinationIntegral) -> MatrixJob:
    """Job for an arbitrary combination integral.  Symmetric integrals
    compute one triangle (diagonal included) and mirror; asymmetric ones
    compute all M^2 entries."""
    return MatrixJob(collection, integral=integral)


def pairwise(collection, integral: CombinationIntegral, workers=None) -> PairwiseMatrix:
    """Pairwise integrated combination matrix under an arbitrary
    combination integral."""
    return pairwise_job(collection, integral).run(workers)


def progress_subscribe(job: MatrixJob, sink) -> None:
    """Attach a progress sink to a pending job (see MatrixJob.subscribe)."""
    job.subscribe(sink)
