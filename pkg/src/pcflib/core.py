"""Piecewise constant functions (PCFs) and their basic algebra.

A PCF is a right-continuous step function on [0, inf) stored as an
immutable (n+1) x 2 matrix of (time, value) rows.  The first time is
always exactly 0, times are strictly increasing, and the final value
extends to infinity.  Instances are safe to share between threads.
"""

from __future__ import annotations

import math

import numpy as np

from . import errors

__all__ = [
    "Pcf",
    "make_pcf",
    "zero_pcf",
    "evaluate",
    "scale",
    "add",
    "minimize_discretization",
    "apply_unary",
]


class Pcf:
    """Immutable step function [t_0..t_n; f] with t_0 = 0.

    Attributes
    ----------
    times, values : read-only contiguous numpy arrays of equal length >= 1
    dtype : numpy float32 or float64, fixed per instance
    """

    __slots__ = ("_mat", "_lists")

    def __init__(self, matrix, dtype=None):
        mat = _validate_matrix(matrix, dtype)
        self._mat = mat
        self._lists = None

    @classmethod
    def _wrap(cls, mat):
        # Internal fast path: `mat` must already satisfy all invariants
        # and be contiguous; it is frozen here.
        self = cls.__new__(cls)
        mat.flags.writeable = False
        self._mat = mat
        self._lists = None
        return self

    @property
    def times(self):
        return self._mat[:, 0]

    @property
    def values(self):
        return self._mat[:, 1]

    @property
    def dtype(self):
        return self._mat.dtype

    @property
    def size(self):
        """Number of stored (time, value) rows."""
        return self._mat.shape[0]

    def to_matrix(self):
        """Zero-copy read-only (n+1) x 2 view of (times, values) rows."""
        return self._mat

    def as_lists(self):
        """(times, values) as plain Python float lists; cached."""
        if self._lists is None:
            self._lists = (self._mat[:, 0].tolist(), self._mat[:, 1].tolist())
        return self._lists

    def __call__(self, t):
        return evaluate(self, t)

    def __len__(self):
        return self._mat.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Pcf):
            return NotImplemented
        return self.dtype == other.dtype and np.array_equal(self._mat, other._mat)

    __hash__ = None

    def __repr__(self):
        return f"Pcf(size={self.size}, dtype={self.dtype.name})"

    # vector-space sugar
    def __add__(self, other):
        return add(self, other)

    def __mul__(self, a):
        return scale(self, a)

    __rmul__ = __mul__

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))


def _validate_matrix(matrix, dtype):
    arr = np.asarray(matrix)
    if dtype is None:
        dtype = np.float32 if arr.dtype == np.float32 else np.float64
    arr = np.ascontiguousarray(arr, dtype=dtype)
    if arr.ndim != 2 or arr.shape[1] != 2:
        if arr.size == 0:
            raise errors.Empty("a PCF needs at least one (time, value) row")
        raise errors.NonIncreasingTimes(
            f"expected an (n, 2) time-value matrix, got shape {arr.shape}"
        )
    if arr.shape[0] == 0:
        raise errors.Empty("a PCF needs at least one (time, value) row")
    if not np.isfinite(arr).all():
        raise errors.NonFinite("PCF times and values must all be finite")
    times = arr[:, 0]
    if times[0] != 0.0:
        raise errors.NonZeroStart(f"first time must be 0, got {times[0]}")
    if times.shape[0] > 1 and not (np.diff(times) > 0).all():
        raise errors.NonIncreasingTimes("times must be strictly increasing")
    out = arr.copy() if arr is matrix or not arr.flags.owndata else arr
    out.flags.writeable = False
    return out


def make_pcf(matrix, dtype=None) -> Pcf:
    """Validate a sequence of (time, value) rows and build a Pcf.

    The scalar kind is float32 when a float32 array is passed, else
    float64; pass ``dtype`` to force either.
    """
    return Pcf(matrix, dtype=dtype)


def zero_pcf(dtype=np.float64) -> Pcf:
    """The canonical zero PCF [(0, 0)]."""
    return Pcf._wrap(np.zeros((1, 2), dtype=dtype))


def evaluate(f: Pcf, t) -> float:
    """f(t) under the right-continuous convention: the value of the piece
    [t_k, t_{k+1}) with k = max{i : t_i <= t}."""
    t = float(t)
    if math.isnan(t) or math.isinf(t):
        raise errors.NonFinite("evaluation time must be finite")
    if t < 0.0:
        raise errors.NegativeTime(f"PCFs live on [0, inf); got t={t}")
    k = int(np.searchsorted(f.times, t, side="right")) - 1
    return float(f.values[k])


def scale(f: Pcf, a) -> Pcf:
    """Pointwise a*f.  a = 0 collapses to the canonical zero PCF."""
    a = float(a)
    if math.isnan(a) or math.isinf(a):
        raise errors.NonFinite("scalar must be finite")
    if a == 0.0:
        return zero_pcf(f.dtype)
    vals = f.values * f.dtype.type(a)
    if not np.isfinite(vals).all():
        raise errors.NonFinite("scaling overflowed to non-finite values")
    mat = np.empty_like(f._mat)
    mat[:, 0] = f.times
    mat[:, 1] = vals
    return Pcf._wrap(mat)


def add(f: Pcf, g: Pcf) -> Pcf:
    """Pointwise f+g on the minimal common refinement, minimally
    discretized.  Operands must share one scalar kind."""
    from .reduce import reduce_pair

    return reduce_pair(f, g, lambda x, y: x + y)


def minimize_discretization(f: Pcf) -> Pcf:
    """Drop every interior point whose value repeats its predecessor's.

    Idempotent and evaluate-preserving; [(0,0),(1,0)] collapses to the
    canonical zero PCF.
    """
    vals = f.values
    if vals.shape[0] == 1:
        return f
    keep = np.empty(vals.shape[0], dtype=bool)
    keep[0] = True
    keep[1:] = vals[1:] != vals[:-1]
    if keep.all():
        return f
    return Pcf._wrap(np.ascontiguousarray(f._mat[keep]))


def apply_unary(f: Pcf, h) -> Pcf:
    """The induced transformation t -> h(f(t)), minimally discretized."""
    vals = [float(h(v)) for v in f.values.tolist()]
    mat = np.empty_like(f._mat)
    mat[:, 0] = f.times
    mat[:, 1] = vals
    if not np.isfinite(mat[:, 1]).all():
        raise errors.NonFinite("unary map produced a non-finite value")
    return minimize_discretization(Pcf._wrap(mat))
