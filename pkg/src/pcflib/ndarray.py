"""Shaped, sliceable containers of PCF handles.

Arrays store references to immutable Pcf objects in row-major order;
views address a subset of a parent array through an offset, per-dim
strides and extents, and never copy.  Integer indices drop dimensions,
ranges keep them.  Negative indices and negative steps are rejected
rather than silently misread.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import errors
from .core import Pcf, zero_pcf
from .reduce import mean as _mean

__all__ = ["Shape", "PcfArray", "PcfView", "zeros", "mean_along"]


class Shape(tuple):
    def __repr__(self):
        return f"Shape({', '.join(str(e) for e in self)})"


def _normalize_shape(shape):
    if isinstance(shape, int):
        shape = (shape,)
    shape = tuple(int(e) for e in shape)
    if not shape:
        raise errors.ZeroExtent("shape needs at least one dimension")
    for e in shape:
        if e < 1:
            raise errors.ZeroExtent(f"extents must be >= 1, got {shape}")
    return shape


def _row_major_strides(shape):
    strides = [1] * len(shape)
    for d in range(len(shape) - 2, -1, -1):
        strides[d] = strides[d + 1] * shape[d + 1]
    return tuple(strides)


class _Indexable:
    """Shared slicing/assignment logic for arrays and views."""

    # subclasses provide: shape, _strides, _offset, _base_list(), dtype

    @property
    def ndim(self):
        return len(self.shape)

    @property
    def size(self):
        n = 1
        for e in self.shape:
            n *= e
        return n

    def _flat_index(self, idx):
        return self._offset + sum(i * s for i, s in zip(idx, self._strides))

    def _indices(self):
        return itertools.product(*(range(e) for e in self.shape))

    def get(self, *idx) -> Pcf:
        idx = _check_point_index(idx, self.shape)
        return self._base_list()[self._flat_index(idx)]

    def _resolve_specs(self, specs):
        if not isinstance(specs, tuple):
            specs = (specs,)
        if len(specs) > self.ndim:
            raise errors.OutOfBounds(
                f"{len(specs)} indices for a rank-{self.ndim} container"
            )
        specs = specs + (slice(None),) * (self.ndim - len(specs))
        offset = self._offset
        out_shape = []
        out_strides = []
        for spec, extent, stride in zip(specs, self.shape, self._strides):
            if isinstance(spec, slice):
                start, stop, step = spec.start, spec.stop, spec.step
                step = 1 if step is None else int(step)
                if step < 1:
                    raise errors.InvalidStep(f"slice step must be >= 1, got {step}")
                start = 0 if start is None else int(start)
                stop = extent if stop is None else int(stop)
                if start < 0 or stop < 0:
                    raise errors.OutOfBounds("negative slice bounds are unsupported")
                stop = min(stop, extent)
                if start > extent:
                    raise errors.OutOfBounds(
                        f"slice start {start} beyond extent {extent}"
                    )
                n = max(0, -(-(stop - start) // step))
                if n == 0:
                    raise errors.ZeroExtent("empty slices are unsupported")
                offset += start * stride
                out_shape.append(n)
                out_strides.append(stride * step)
            else:
                i = int(spec)
                if i < 0 or i >= extent:
                    raise errors.OutOfBounds(
                        f"index {i} out of range for extent {extent}"
                    )
                offset += i * stride
        return offset, tuple(out_shape), tuple(out_strides)

    def __getitem__(self, specs):
        offset, shape, strides = self._resolve_specs(specs)
        if not shape:
            return self._base_list()[offset]
        return PcfView(self._base(), offset, shape, strides)

    def __setitem__(self, specs, source):
        offset, shape, strides = self._resolve_specs(specs)
        store = self._base_list()
        dtype = self._base().dtype
        if not shape:
            if not isinstance(source, Pcf):
                raise errors.ShapeMismatch("a single element takes a single Pcf")
            _check_dtype(source, dtype)
            store[offset] = source
            return
        target = PcfView(self._base(), offset, shape, strides)
        if isinstance(source, Pcf):
            raise errors.ShapeMismatch(
                f"cannot assign a single Pcf to shape {Shape(shape)}"
            )
        if Shape(source.shape) != Shape(shape):
            raise errors.ShapeMismatch(
                f"cannot assign shape {Shape(source.shape)} into {Shape(shape)}"
            )
        # Snapshot first: overlapping views of one parent stay well-defined.
        handles = [source.get(*idx) for idx in source._indices()]
        for f in handles:
            _check_dtype(f, dtype)
        for idx, f in zip(target._indices(), handles):
            store[target._flat_index(idx)] = f

    def to_list(self):
        """Row-major list of the addressed Pcf handles."""
        store = self._base_list()
        return [store[self._flat_index(idx)] for idx in self._indices()]


def _check_point_index(idx, shape):
    if len(idx) != len(shape):
        raise errors.OutOfBounds(
            f"need {len(shape)} indices, got {len(idx)}"
        )
    out = []
    for i, e in zip(idx, shape):
        i = int(i)
        if i < 0 or i >= e:
            raise errors.OutOfBounds(f"index {i} out of range for extent {e}")
        out.append(i)
    return tuple(out)


def _check_dtype(f, dtype):
    if f.dtype != dtype:
        raise errors.MixedPrecision(
            f"array holds {dtype.name} elements, got {f.dtype.name}"
        )


class PcfArray(_Indexable):
    """Shaped container of Pcf handles (row-major flat storage).

    Elements are shared references to immutable PCFs; assignment and
    slicing move handles, never point buffers.  All elements share one
    scalar kind.
    """

    def __init__(self, elements, shape=None, dtype=None):
        elems = list(elements)
        if shape is None:
            shape = (len(elems),)
        shape = _normalize_shape(shape)
        n = 1
        for e in shape:
            n *= e
        if n != len(elems):
            raise errors.ShapeMismatch(
                f"{len(elems)} elements cannot fill shape {Shape(shape)}"
            )
        if dtype is None:
            dtype = elems[0].dtype
        dtype = np.dtype(dtype)
        for f in elems:
            _check_dtype(f, dtype)
        self._store = elems
        self.shape = Shape(shape)
        self.dtype = dtype
        self._strides = _row_major_strides(shape)
        self._offset = 0

    def _base(self):
        return self

    def _base_list(self):
        return self._store


class PcfView(_Indexable):
    """Lightweight window into a PcfArray; addresses, never copies."""

    def __init__(self, base, offset, shape, strides):
        self._parent = base
        self._offset = offset
        self.shape = Shape(shape)
        self._strides = strides

    @property
    def dtype(self):
        return self._parent.dtype

    def _base(self):
        return self._parent

    def _base_list(self):
        return self._parent._store


def zeros(shape, dtype=np.float64) -> PcfArray:
    """Array of the given shape filled with canonical zero PCFs."""
    shape = _normalize_shape(shape)
    n = 1
    for e in shape:
        n *= e
    z = zero_pcf(dtype)
    return PcfArray([z] * n, shape=shape, dtype=dtype)


def mean_along(array, dim) -> PcfArray:
    """Mean PCF along one dimension; the dimension is removed.

    A rank-1 input yields a 1-element array holding the overall mean.
    """
    dim = int(dim)
    if dim < 0 or dim >= array.ndim:
        raise errors.BadDimension(
            f"dim {dim} out of range for rank {array.ndim}"
        )
    out_shape = tuple(e for d, e in enumerate(array.shape) if d != dim)
    if not out_shape:
        out_shape = (1,)
        outer = [()]
    else:
        outer = list(itertools.product(*(range(e) for e in out_shape)))
    results = []
    for idx in outer:
        full = list(idx)
        fiber = []
        for k in range(array.shape[dim]):
            point = tuple(full[:dim]) + (k,) + tuple(full[dim:])
            fiber.append(array.get(*point))
        results.append(_mean(fiber))
    return PcfArray(results, shape=out_shape, dtype=array.dtype)
