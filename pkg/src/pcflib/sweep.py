"""Implicit common-grid sweeps over PCFs.

Rectangle iteration walks two PCFs with a pair of cursors, emitting one
cell of their minimal common refinement at a time; segment iteration is
the single-PCF analogue.  Neither materializes the common grid: every
emitted edge is copied from an input time array (or is a bound), never
computed, so cells tile [a, b) exactly.

Results are delivered through a callback.  The compiled backend inlines
the same sweep for the hot integral kernels; this module is the
reference implementation and the path taken by arbitrary Python
callbacks.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from . import errors
from .core import Pcf

__all__ = ["Rectangle", "Segment", "iterate_rectangles", "iterate_segments"]

_INF = math.inf


class Rectangle(NamedTuple):
    """One cell (l, r, v_f, v_g) of the implicit common grid.

    f and g hold the values v_f and v_g on [l, r); r may be +inf.
    """

    l: float
    r: float
    v_f: float
    v_g: float


class Segment(NamedTuple):
    """One constant piece (l, r, v) of a single PCF clipped to bounds."""

    l: float
    r: float
    v: float


def _check_bounds(a, b):
    a = float(a)
    b = float(b)
    if math.isnan(a) or math.isnan(b) or math.isinf(a):
        raise errors.InvalidBounds(f"bad integration bounds [{a}, {b})")
    if a < 0.0 or not a < b:
        raise errors.InvalidBounds(f"bounds must satisfy 0 <= a < b, got [{a}, {b})")
    return a, b


def _start_index(times, a):
    # max{i : times[i] <= a}; times[0] = 0 <= a always.
    k = 0
    n = len(times)
    while k + 1 < n and times[k + 1] <= a:
        k += 1
    return k


def iterate_rectangles(f: Pcf, g: Pcf, a, b, visit: Callable[[Rectangle], None]):
    """Invoke ``visit`` once per cell of the minimal common refinement of
    f and g restricted to [a, b), in increasing time order.

    Emitted cells tile [a, b) exactly: the first left edge is a, each
    right edge is the next cell's left edge, and the last right edge is
    b (possibly +inf).  Zero-width cells are never emitted; simultaneous
    jumps in f and g advance both cursors in one step.
    """
    a, b = _check_bounds(a, b)
    if f.dtype != g.dtype:
        raise errors.MixedPrecision(
            f"cannot sweep {f.dtype.name} against {g.dtype.name}"
        )
    ft, fv = f.as_lists()
    gt, gv = g.as_lists()
    nf = len(ft)
    ng = len(gt)
    k = _start_index(ft, a)
    m = _start_index(gt, a)
    t = a
    while True:
        tn_f = ft[k + 1] if k + 1 < nf else _INF
        tn_g = gt[m + 1] if m + 1 < ng else _INF
        tn = tn_f if tn_f < tn_g else tn_g
        if tn >= b:
            visit(Rectangle(t, b, fv[k], gv[m]))
            return
        visit(Rectangle(t, tn, fv[k], gv[m]))
        if tn_f == tn:
            k += 1
        if tn_g == tn:
            m += 1
        t = tn


def iterate_segments(f: Pcf, a, b, visit: Callable[[Segment], None]):
    """Invoke ``visit`` once per constant piece of f intersected with
    [a, b), in time order.  Adjacent segments may repeat a value; no
    merging happens here."""
    a, b = _check_bounds(a, b)
    ft, fv = f.as_lists()
    n = len(ft)
    k = _start_index(ft, a)
    t = a
    while k + 1 < n and ft[k + 1] < b:
        visit(Segment(t, ft[k + 1], fv[k]))
        t = ft[k + 1]
        k += 1
    visit(Segment(t, b, fv[k]))
