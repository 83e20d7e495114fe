# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels (hot inner loops).

Twin of ``_kernels_py``: identical cursor logic, identical left-to-right
64-bit accumulation, identical rounding, so results are bitwise equal to
the fallback.  The block kernel runs with the GIL released, which is
what lets the thread-based matrix scheduler actually scale.
"""

from libc.math cimport INFINITY, fabs, pow

import numpy as np

OP_LP = 0
OP_INNER = 1

cdef int _OP_LP = 0

ctypedef fused floating:
    float
    double


cdef double _accumulate(const floating[:] ft, const floating[:] fv,
                        const floating[:] gt, const floating[:] gv,
                        double a, double b, int op, double p) noexcept nogil:
    cdef Py_ssize_t nf = ft.shape[0]
    cdef Py_ssize_t ng = gt.shape[0]
    cdef Py_ssize_t k = 0, m = 0
    cdef double acc = 0.0
    cdef double t = a
    cdef double vf, vg, tn_f, tn_g, tn, hv
    while k + 1 < nf and <double>ft[k + 1] <= a:
        k += 1
    while m + 1 < ng and <double>gt[m + 1] <= a:
        m += 1
    while True:
        vf = <double>fv[k]
        vg = <double>gv[m]
        tn_f = <double>ft[k + 1] if k + 1 < nf else INFINITY
        tn_g = <double>gt[m + 1] if m + 1 < ng else INFINITY
        tn = tn_f if tn_f < tn_g else tn_g
        if op == _OP_LP:
            hv = pow(fabs(vf - vg), p)
        else:
            hv = vf * vg
        if tn >= b:
            if b == INFINITY:
                if hv != 0.0:
                    return INFINITY if hv > 0.0 else -INFINITY
            else:
                acc += hv * (b - t)
            return acc
        acc += hv * (tn - t)
        if tn_f == tn:
            k += 1
        if tn_g == tn:
            m += 1
        t = tn


def integrate_pair(const floating[:] ft, const floating[:] fv,
                   const floating[:] gt, const floating[:] gv,
                   double a, double b, int op, double p):
    """Raw combination integral of one pair; +-inf signals divergence."""
    cdef double res
    with nogil:
        res = _accumulate(ft, fv, gt, gv, a, b, op, p)
    return res


def pack(collection):
    """Concatenate a collection into flat arrays + offsets for block sweeps."""
    dtype = collection[0].dtype
    sizes = np.fromiter((f.size for f in collection), dtype=np.int64,
                        count=len(collection))
    off = np.zeros(len(collection) + 1, dtype=np.int64)
    np.cumsum(sizes, out=off[1:])
    total = int(off[len(collection)])
    tcat = np.empty(total, dtype=dtype)
    vcat = np.empty(total, dtype=dtype)
    for i, f in enumerate(collection):
        tcat[off[i]:off[i + 1]] = f.times
        vcat[off[i]:off[i + 1]] = f.values
    return tcat, vcat, off


def fill_block(packed, Py_ssize_t r0, Py_ssize_t r1, int op, double p,
               bint apply_root, bint diag, double a, double b,
               floating[:, :] out):
    """Fill rows [r0, r1) of a symmetric pairwise matrix; see the
    fallback twin for the exact contract."""
    tcat_arr, vcat_arr, off_arr = packed
    cdef const floating[:] tcat = tcat_arr
    cdef const floating[:] vcat = vcat_arr
    cdef const long long[:] off = off_arr
    cdef Py_ssize_t M = off.shape[0] - 1
    cdef double invp = 1.0 / p if apply_root else 1.0
    cdef Py_ssize_t i, j, j0
    cdef Py_ssize_t err_i = -1, err_j = -1
    cdef double acc
    with nogil:
        for i in range(r0, r1):
            j0 = i if diag else i + 1
            for j in range(j0, M):
                acc = _accumulate(tcat[off[i]:off[i + 1]], vcat[off[i]:off[i + 1]],
                                  tcat[off[j]:off[j + 1]], vcat[off[j]:off[j + 1]],
                                  a, b, op, p)
                if acc == INFINITY or acc == -INFINITY or acc != acc:
                    err_i = i
                    err_j = j
                    break
                if apply_root:
                    acc = pow(acc, invp)
                out[i, j] = <floating>acc
                out[j, i] = <floating>acc
            if err_i >= 0:
                break
    if err_i >= 0:
        return (err_i, err_j)
    return None
