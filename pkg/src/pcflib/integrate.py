"""Combination integrals over PCF pairs and functionals of single PCFs.

All accumulation is strictly left-to-right in time order and always in
64-bit, regardless of the operands' scalar kind; the result is rounded
to that kind at the very end.  This makes every integral independent of
thread count and bitwise equal to the explicit union-grid sum.

Integrals over [a, inf) are finite only when the integrand vanishes on
the unbounded tail cell; a nonzero tail raises DivergentIntegral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import errors
from ._backend import OP_INNER, OP_LP, get_backend
from .core import Pcf
from .sweep import iterate_rectangles, iterate_segments

__all__ = [
    "CombinationIntegral",
    "combine_integrate",
    "combine_integrate_timedep",
    "lp_distance",
    "l2_inner_product",
    "integrate_single",
]

_INF = math.inf


def _round_to_kind(x, dtype):
    if dtype == np.float32:
        return float(np.float32(x))
    return float(x)


def _common_kind(f, g):
    if f.dtype != g.dtype:
        raise errors.MixedPrecision(
            f"cannot combine {f.dtype.name} with {g.dtype.name}"
        )
    return f.dtype


def combine_integrate(f: Pcf, g: Pcf, h, a=0.0, b=_INF) -> float:
    """integral over [a, b) of h(f(t), g(t)) dt for an arbitrary Python h.

    For b = inf the final unbounded cell must have h(v_f, v_g) = 0, else
    the integral diverges.
    """
    dtype = _common_kind(f, g)
    acc = 0.0
    bad = []

    def cell(rect):
        nonlocal acc
        hv = float(h(rect.v_f, rect.v_g))
        if rect.r == _INF:
            if math.isnan(hv):
                bad.append(errors.NonFinite("h produced NaN on the tail cell"))
            elif hv != 0.0:
                bad.append(
                    errors.DivergentIntegral(
                        f"nonzero integrand {hv} on the unbounded tail [{rect.l}, inf)"
                    )
                )
            return
        acc += hv * (rect.r - rect.l)

    iterate_rectangles(f, g, a, b, cell)
    if bad:
        raise bad[0]
    if math.isnan(acc):
        raise errors.NonFinite("h produced NaN inside the integration range")
    if math.isinf(acc):
        raise errors.NonFinite("integral overflowed")
    return _round_to_kind(acc, dtype)


def combine_integrate_timedep(f: Pcf, g: Pcf, H, a=0.0, b=_INF) -> float:
    """Time-dependent variant: H is an antiderivative in t of the intended
    integrand h(v_f, v_g, t); each cell contributes H(.,.,r) - H(.,.,l)."""
    dtype = _common_kind(f, g)
    acc = 0.0
    bad = []

    def cell(rect):
        nonlocal acc
        if rect.r == _INF:
            c = float(H(rect.v_f, rect.v_g, _INF)) - float(H(rect.v_f, rect.v_g, rect.l))
            if c != 0.0 or math.isnan(c):
                bad.append(
                    errors.DivergentIntegral(
                        "nonzero or non-finite contribution on the unbounded tail"
                    )
                )
            return
        acc += float(H(rect.v_f, rect.v_g, rect.r)) - float(H(rect.v_f, rect.v_g, rect.l))

    iterate_rectangles(f, g, a, b, cell)
    if bad:
        raise bad[0]
    if not math.isfinite(acc):
        raise errors.NonFinite("antiderivative produced a non-finite sum")
    return _round_to_kind(acc, dtype)


def _integrate_op(f: Pcf, g: Pcf, op, p, a, b) -> float:
    """Backend fast path for the op-coded kernels; raw 64-bit result."""
    dtype = _common_kind(f, g)
    if math.isnan(a) or math.isnan(b) or math.isinf(a) or a < 0.0 or not a < b:
        raise errors.InvalidBounds(f"bounds must satisfy 0 <= a < b, got [{a}, {b})")
    raw = get_backend().integrate_pair(f, g, float(a), float(b), op, float(p))
    if math.isinf(raw):
        if b == _INF:
            raise errors.DivergentIntegral(
                "nonzero integrand on the unbounded tail cell"
            )
        raise errors.NonFinite("integral overflowed")
    if math.isnan(raw):
        raise errors.NonFinite("integrand produced NaN")
    return raw


def lp_distance(f: Pcf, g: Pcf, p=1.0, a=0.0, b=_INF) -> float:
    """(integral of |f - g|^p over [a, b)) ** (1/p), p >= 1."""
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    raw = _integrate_op(f, g, OP_LP, p, a, b)
    return _round_to_kind(pow(raw, 1.0 / p), _common_kind(f, g))


def l2_inner_product(f: Pcf, g: Pcf, a=0.0, b=_INF) -> float:
    """integral of f(t) * g(t) over [a, b)."""
    raw = _integrate_op(f, g, OP_INNER, 0.0, a, b)
    return _round_to_kind(raw, _common_kind(f, g))


def integrate_single(f: Pcf, h, a=0.0, b=_INF) -> float:
    """integral over [a, b) of h(f(t)) dt; same tail rule as the pairwise
    integrals."""
    acc = 0.0
    bad = []

    def piece(seg):
        nonlocal acc
        hv = float(h(seg.v))
        if seg.r == _INF:
            if math.isnan(hv):
                bad.append(errors.NonFinite("h produced NaN on the tail piece"))
            elif hv != 0.0:
                bad.append(
                    errors.DivergentIntegral(
                        f"nonzero integrand {hv} on the unbounded tail [{seg.l}, inf)"
                    )
                )
            return
        acc += hv * (seg.r - seg.l)

    iterate_segments(f, a, b, piece)
    if bad:
        raise bad[0]
    if not math.isfinite(acc):
        raise errors.NonFinite("integral is not finite")
    return _round_to_kind(acc, f.dtype)


@dataclass(frozen=True)
class CombinationIntegral:
    """A functional r(integral over [a, b) of h(f, g)).

    Exactly one of ``h`` (pointwise integrand) or ``H`` (antiderivative
    in t, for time-dependent integrands) must be given.  ``symmetric``
    declares h(x, y) = h(y, x) and lets pairwise-matrix jobs compute
    only one triangle.
    """

    h: Optional[Callable] = None
    H: Optional[Callable] = None
    r: Optional[Callable] = None
    a: float = 0.0
    b: float = _INF
    symmetric: bool = False

    def __post_init__(self):
        if (self.h is None) == (self.H is None):
            raise ValueError("exactly one of h and H must be given")

    def __call__(self, f: Pcf, g: Pcf) -> float:
        if self.h is not None:
            val = combine_integrate(f, g, self.h, self.a, self.b)
        else:
            val = combine_integrate_timedep(f, g, self.H, self.a, self.b)
        if self.r is not None:
            val = _round_to_kind(self.r(val), _common_kind(f, g))
        return val
