"""Pure-Python fallback for the hot sweep kernels.

Mirrors ``_sweepkern`` (the Cython core) operation for operation: the
same two-cursor sweep, the same strictly left-to-right accumulation in
64-bit, the same final rounding to the collection's scalar kind.  Both
backends therefore produce bitwise-identical results; this one is just
slow.  Selection happens in :mod:`pcflib._backend`.
"""

from __future__ import annotations

import math

import numpy as np

OP_LP = 0  # h(x, y) = |x - y| ** p
OP_INNER = 1  # h(x, y) = x * y

_INF = math.inf


def _accumulate(ft, fv, gt, gv, a, b, op, p):
    """Sum h(v_f, v_g) * width over the implicit common grid of [a, b).

    Returns NaN when b is infinite and the unbounded tail cell has a
    nonzero integrand (the integral diverges).
    """
    nf = len(ft)
    ng = len(gt)
    k = 0
    while k + 1 < nf and ft[k + 1] <= a:
        k += 1
    m = 0
    while m + 1 < ng and gt[m + 1] <= a:
        m += 1
    acc = 0.0
    t = a
    while True:
        vf = fv[k]
        vg = gv[m]
        tn_f = ft[k + 1] if k + 1 < nf else _INF
        tn_g = gt[m + 1] if m + 1 < ng else _INF
        tn = tn_f if tn_f < tn_g else tn_g
        if op == OP_LP:
            hv = pow(abs(vf - vg), p)
        else:
            hv = vf * vg
        if tn >= b:
            if b == _INF:
                if hv != 0.0:
                    return _INF if hv > 0.0 else -_INF
            else:
                acc += hv * (b - t)
            return acc
        acc += hv * (tn - t)
        if tn_f == tn:
            k += 1
        if tn_g == tn:
            m += 1
        t = tn


def integrate_pair(ft, fv, gt, gv, a, b, op, p):
    """Raw combination integral of one pair; +-inf signals divergence."""
    return _accumulate(ft, fv, gt, gv, float(a), float(b), op, float(p))


def pack(collection):
    """Per-PCF Python float lists, the layout this backend sweeps over."""
    times = []
    values = []
    for f in collection:
        ft, fv = f.as_lists()
        times.append(ft)
        values.append(fv)
    return times, values


def fill_block(packed, r0, r1, op, p, apply_root, diag, a, b, out):
    """Fill rows [r0, r1) of a symmetric pairwise matrix.

    Each entry is computed once and mirrored.  The diagonal is computed
    only when ``diag`` is set (inner products); distance diagonals stay
    at their prezeroed 0.  Returns the first non-finite pair (i, j) or
    None.
    """
    times, values = packed
    M = len(times)
    invp = 1.0 / p if apply_root else 1.0
    for i in range(r0, r1):
        ft = times[i]
        fv = values[i]
        j0 = i if diag else i + 1
        for j in range(j0, M):
            acc = _accumulate(ft, fv, times[j], values[j], a, b, op, p)
            if math.isinf(acc) or math.isnan(acc):
                return (i, j)
            if apply_root:
                acc = pow(acc, invp)
            out[i, j] = acc
            out[j, i] = acc
    return None
