"""High-level front-end over pcflib.

Wraps the core library in a small surface aimed at interactive use:
``Pcf`` built straight from an n x 2 numpy array (dtype inherited from
the array), ``Array``/``zeros`` with numpy-style slicing, ``mean`` along
a dimension, and ``pdist``/``l2_kernel`` returning plain numpy arrays.
All arithmetic happens inside pcflib; this package adds no numerics, so
results agree bitwise with the core API.
"""

from __future__ import annotations

import numpy as np

import pcflib as _pl

from . import random  # noqa: F401 - re-exported submodule

__all__ = ["Pcf", "Array", "zeros", "mean", "pdist", "l2_kernel"]

__version__ = "0.1.0"


class Pcf:
    """A piecewise constant function built from an n x 2 time-value array.

    The scalar kind (float32 or float64) is inherited from the input
    array.  ``np.array(f)`` exports the stored matrix; the export is
    read-only since times must stay sorted and start at 0.
    """

    def __init__(self, data):
        if isinstance(data, _pl.Pcf):
            self._inner = data
        else:
            arr = np.asarray(data)
            dtype = np.float32 if arr.dtype == np.float32 else np.float64
            self._inner = _pl.make_pcf(arr, dtype=dtype)

    @property
    def size(self):
        return self._inner.size

    @property
    def dtype(self):
        return self._inner.dtype

    def __array__(self, dtype=None, copy=None):
        mat = self._inner.to_matrix()
        if dtype is not None and np.dtype(dtype) != mat.dtype:
            return mat.astype(dtype)
        if copy:
            return mat.copy()
        return mat

    def __eq__(self, other):
        if isinstance(other, Pcf):
            return self._inner == other._inner
        return NotImplemented

    def __hash__(self):
        return hash(id(self._inner))

    def __repr__(self):
        return f"<PCF size={self.size}, dtype={self.dtype.name}>"


def _unwrap(f):
    return f._inner if isinstance(f, Pcf) else f


def _wrap_container(obj):
    if isinstance(obj, _pl.Pcf):
        return Pcf(obj)
    return Array(obj)


class Array:
    """Multidimensional array of PCFs with numpy-style views.

    Integer indices drop dimensions, slices keep them; views share the
    parent's elements.  Construct from a flat list of Pcf (rank 1) or
    wrap an existing core container.
    """

    def __init__(self, elements):
        if isinstance(elements, (_pl.PcfArray, _pl.PcfView)):
            self._inner = elements
        else:
            self._inner = _pl.PcfArray([_unwrap(f) for f in elements])

    @property
    def shape(self):
        return self._inner.shape

    @property
    def dtype(self):
        return self._inner.dtype

    def __len__(self):
        return self.shape[0]

    def __getitem__(self, specs):
        return _wrap_container(self._inner[specs])

    def __setitem__(self, specs, value):
        if isinstance(value, (Pcf, _pl.Pcf)):
            self._inner[specs] = _unwrap(value)
        elif isinstance(value, Array):
            self._inner[specs] = value._inner
        else:
            self._inner[specs] = value

    def to_list(self):
        return [Pcf(f) for f in self._inner.to_list()]

    def __repr__(self):
        return f"<PCF array, shape={self.shape!r}, dtype={self.dtype.name}>"


def zeros(shape, dtype=np.float64) -> Array:
    """Array of the given shape filled with constant-zero PCFs."""
    return Array(_pl.zeros(shape, dtype=dtype))


def mean(A, dim) -> Array:
    """Mean PCF along dimension ``dim``; that dimension is removed."""
    return Array(_pl.mean_along(A._inner if isinstance(A, Array) else A, dim))


def _as_collection(X):
    if isinstance(X, Array):
        return X._inner.to_list()
    return [_unwrap(f) for f in X]


def pdist(X, p=1.0, workers=None) -> np.ndarray:
    """Pairwise L_p distance matrix (L_1 by default) as a numpy array."""
    return np.asarray(_pl.pdist(_as_collection(X), p=p, workers=workers))


def l2_kernel(X, workers=None) -> np.ndarray:
    """Pairwise L_2 inner product (Gram) matrix as a numpy array."""
    return np.asarray(_pl.l2_kernel(_as_collection(X), workers=workers))
