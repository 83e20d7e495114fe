"""Associative reductions of PCF collections.

reduce_pair lifts a two-argument map pointwise onto a PCF pair via the
implicit-grid sweep, emitting a point only where the combined value
changes.  tree_reduce folds a whole collection in a fixed binary tree
whose shape never depends on worker count, so results are reproducible
run to run.  mean and std are derived statistics.
"""

from __future__ import annotations

import math
import operator

import numpy as np

from . import errors
from .core import Pcf, apply_unary, minimize_discretization, scale, zero_pcf
from .sweep import iterate_rectangles

__all__ = [
    "reduce_pair",
    "ReductionAccumulator",
    "tree_reduce",
    "mean",
    "variance",
    "std",
]


def reduce_pair(f: Pcf, g: Pcf, h) -> Pcf:
    """The induced combination h_*(f, g) as a minimally discretized Pcf.

    One output row per implicit-grid cell whose combined value differs
    from the previous one (the t=0 row is always kept); output size is
    at most |f| + |g|.
    """
    if f.dtype != g.dtype:
        raise errors.MixedPrecision(
            f"cannot combine {f.dtype.name} with {g.dtype.name}"
        )
    dtype = f.dtype
    cast = np.float32 if dtype == np.float32 else None
    ts = []
    vs = []

    def cell(rect):
        v = float(h(rect.v_f, rect.v_g))
        if cast is not None:
            v = float(cast(v))
        if not math.isfinite(v):
            raise errors.NonFinite(
                f"combination map produced {v} at t={rect.l}"
            )
        if not vs or v != vs[-1]:
            ts.append(rect.l)
            vs.append(v)

    iterate_rectangles(f, g, 0.0, math.inf, cell)
    mat = np.empty((len(ts), 2), dtype=dtype)
    mat[:, 0] = ts
    mat[:, 1] = vs
    return Pcf._wrap(mat)


class ReductionAccumulator:
    """Double-buffered mutable PCF state for in-place associative folds.

    The state always satisfies the Pcf invariants and is minimally
    discretized between operations.  Each combine writes into a side
    buffer which is then swapped with the state in O(1); capacities only
    ever grow (doubling), truncation is a size adjustment.

    A fresh accumulator represents the canonical zero PCF; the first
    combine replaces the state wholesale (minimized), which is correct
    for ops without an identity at 0 and coincides with 0 (+) f for
    addition.
    """

    def __init__(self, op, dtype=np.float64, capacity=16):
        self.op = op
        self.dtype = np.dtype(dtype)
        cap = max(2, int(capacity))
        self._t = np.zeros(cap, dtype=self.dtype)
        self._v = np.zeros(cap, dtype=self.dtype)
        self._side_t = np.zeros(cap, dtype=self.dtype)
        self._side_v = np.zeros(cap, dtype=self.dtype)
        self._size = 1  # state = [(0, 0)]
        self._fresh = True

    @property
    def size(self):
        return self._size

    def _ensure_capacity(self, need):
        cap = self._t.shape[0]
        if cap >= need:
            return
        while cap < need:
            cap *= 2
        for name in ("_t", "_v", "_side_t", "_side_v"):
            old = getattr(self, name)
            buf = np.zeros(cap, dtype=self.dtype)
            buf[: old.shape[0]] = old
            setattr(self, name, buf)

    def combine(self, other) -> None:
        """state <- state (op) other, where other is a Pcf or another
        accumulator."""
        if isinstance(other, ReductionAccumulator):
            gt, gv, gn = other._t, other._v, other._size
            other_dtype = other.dtype
        else:
            gt, gv, gn = other.times, other.values, other.size
            other_dtype = other.dtype
        if other_dtype != self.dtype:
            raise errors.MixedPrecision(
                f"cannot combine {self.dtype.name} with {other_dtype.name}"
            )
        if self._fresh:
            self._ensure_capacity(gn)
            k = _copy_minimized(gt, gv, gn, self._t, self._v)
            self._size = k
            self._fresh = False
            return
        self._ensure_capacity(self._size + gn)
        k = _merge_into(
            self._t, self._v, self._size,
            gt, gv, gn,
            self.op, self._side_t, self._side_v, self.dtype,
        )
        self._t, self._side_t = self._side_t, self._t
        self._v, self._side_v = self._side_v, self._v
        self._size = k

    def to_pcf(self) -> Pcf:
        """Snapshot the state as an immutable Pcf."""
        mat = np.empty((self._size, 2), dtype=self.dtype)
        mat[:, 0] = self._t[: self._size]
        mat[:, 1] = self._v[: self._size]
        return Pcf._wrap(mat)


def _copy_minimized(gt, gv, gn, out_t, out_v):
    k = 0
    last = None
    for i in range(gn):
        v = float(gv[i])
        if k == 0 or v != last:
            out_t[k] = float(gt[i])
            out_v[k] = v
            k += 1
        last = v
    return k


def _merge_into(st, sv, ns, gt, gv, ng, op, out_t, out_v, dtype):
    # Two-cursor sweep over the raw buffers; same cell logic as
    # sweep.iterate_rectangles specialized to [0, inf) left edges.
    cast = np.float32 if dtype == np.float32 else None
    inf = math.inf
    k = m = 0
    t = 0.0
    out = 0
    last = None
    while True:
        v = float(op(float(sv[k]), float(gv[m])))
        if cast is not None:
            v = float(cast(v))
        if not math.isfinite(v):
            raise errors.NonFinite(f"reduction produced {v} at t={t}")
        if out == 0 or v != last:
            out_t[out] = t
            out_v[out] = v
            out += 1
        last = v
        tn_f = float(st[k + 1]) if k + 1 < ns else inf
        tn_g = float(gt[m + 1]) if m + 1 < ng else inf
        tn = tn_f if tn_f < tn_g else tn_g
        if tn == inf:
            return out
        if tn_f == tn:
            k += 1
        if tn_g == tn:
            m += 1
        t = tn


def tree_reduce(collection, h) -> Pcf:
    """Fold a collection with an associative, symmetric map in a fixed
    binary tree: (1,2)(3,4)..., an unpaired trailing node passing
    through unchanged.  The shape is independent of worker count, so the
    result is deterministic; for exactly-associative float ops (max,
    min) it equals the sequential left fold bitwise.
    """
    level = list(collection)
    if not level:
        raise errors.EmptyCollection("tree_reduce of an empty collection")
    if len(level) == 1:
        return minimize_discretization(level[0])
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            nxt.append(reduce_pair(level[i], level[i + 1], h))
        if len(level) % 2:
            nxt.append(level[-1])  # No-Op passthrough
        level = nxt
    return minimize_discretization(level[0])


def mean(collection) -> Pcf:
    """(1/n) sum of the collection, minimally discretized."""
    coll = list(collection)
    if not coll:
        raise errors.EmptyCollection("mean of an empty collection")
    total = tree_reduce(coll, operator.add)
    return minimize_discretization(scale(total, 1.0 / len(coll)))


def variance(collection, ddof=1) -> Pcf:
    """Pointwise sample variance: (1 / (n - ddof)) sum (f_i - fbar)^2.

    ddof=1 gives the standard unbiased estimator; other denominators can
    be selected via ddof.
    """
    coll = list(collection)
    n = len(coll)
    if n < 2:
        raise errors.InsufficientData("variance needs at least two PCFs")
    fbar = mean(coll)
    sq = [reduce_pair(fi, fbar, lambda x, y: (x - y) * (x - y)) for fi in coll]
    total = tree_reduce(sq, operator.add)
    return minimize_discretization(scale(total, 1.0 / (n - ddof)))


def std(collection, ddof=1) -> Pcf:
    """Pointwise sample standard deviation, sqrt of :func:`variance`."""
    return apply_unary(variance(collection, ddof=ddof), math.sqrt)
