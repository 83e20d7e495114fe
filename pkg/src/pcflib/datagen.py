"""Random PCF generation with seedable determinism.

All draws go through numpy's PCG64 generator seeded from an explicit
(seed, stream) pair, so identical specs give bitwise-identical output on
any platform.  Parallel generation should use distinct stream indices
rather than sharing one stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import errors
from .core import Pcf
from .ndarray import PcfArray, _normalize_shape

__all__ = ["RngSpec", "noisy_trig", "noisy_sin", "noisy_cos", "synthetic_benchmark"]


@dataclass(frozen=True)
class RngSpec:
    """Seed plus stream index for a PCG64 stream."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def _as_generator(rng):
    if rng is None:
        return np.random.default_rng()
    if isinstance(rng, RngSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return RngSpec(int(rng)).generator()


def _draw_unique_sorted(gen, n, draw):
    """Sorted strictly-increasing draws; ties are redrawn, not merged."""
    x = np.sort(draw(gen, n))
    while n > 1:
        dup = np.flatnonzero(np.diff(x) == 0.0)
        if dup.size == 0:
            break
        x[dup] = draw(gen, dup.size)
        x = np.sort(x)
    return x


def noisy_trig(shape, n_points, kind="sin", sigma=0.1, rng=None,
               dtype=np.float64) -> PcfArray:
    """Array of noisy sin/cos PCFs.

    Each element samples ``n_points`` times uniformly on [0, 1], sorted,
    with t=0 prepended; the value at each stored t is g(2 pi t) plus iid
    Normal(0, sigma) noise, g being sin or cos.
    """
    try:
        shape = _normalize_shape(shape)
    except errors.ZeroExtent as exc:
        raise errors.BadShape(str(exc)) from exc
    if n_points < 1:
        raise ValueError(f"n_points must be >= 1, got {n_points}")
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if kind not in ("sin", "cos"):
        raise ValueError(f"kind must be 'sin' or 'cos', got {kind!r}")
    g = np.sin if kind == "sin" else np.cos
    gen = _as_generator(rng)
    count = math.prod(shape)
    elems = []
    for _ in range(count):
        while True:
            t = _draw_unique_sorted(
                gen, n_points, lambda gg, k: gg.uniform(0.0, 1.0, k)
            )
            if t[0] != 0.0:
                t = np.concatenate(([0.0], t))
            v = g(2.0 * np.pi * t) + gen.normal(0.0, sigma, t.shape[0])
            mat = np.column_stack((t, v)).astype(dtype)
            try:
                # Narrow-dtype rounding can merge two close times; redraw.
                elems.append(Pcf(mat, dtype=dtype))
            except errors.NonIncreasingTimes:
                continue
            break
    return PcfArray(elems, shape=shape, dtype=dtype)


def noisy_sin(shape, n_points, sigma=0.1, rng=None, dtype=np.float64) -> PcfArray:
    return noisy_trig(shape, n_points, kind="sin", sigma=sigma, rng=rng, dtype=dtype)


def noisy_cos(shape, n_points, sigma=0.1, rng=None, dtype=np.float64) -> PcfArray:
    return noisy_trig(shape, n_points, kind="cos", sigma=sigma, rng=rng, dtype=dtype)


def synthetic_benchmark(count, rng=None, dtype=np.float64):
    """Benchmark-style PCFs with varying sizes and time scales.

    Per PCF: size n ~ uniform integer [10, 1000]; a scale drawn from
    |N(0, 1)|; n-1 time magnitudes from |N(0, 1)| sorted increasing;
    n-1 values from N(0, 1); the final stored value is exactly 0 so that
    integrals over [0, inf) are finite.  Returns a list of Pcf.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    gen = _as_generator(rng)
    out = []
    for _ in range(count):
        n = int(gen.integers(10, 1001))
        scale = abs(gen.normal())
        while True:
            mags = _draw_unique_sorted(
                gen, n - 1, lambda gg, k: np.abs(gg.normal(0.0, 1.0, k))
            )
            t = scale * mags
            # Multiplying by the scale must keep times strictly
            # increasing and positive after rounding; redraw otherwise.
            if t[0] > 0.0 and (np.diff(t) > 0.0).all():
                break
            scale = abs(gen.normal())
        v = gen.normal(0.0, 1.0, n - 1)
        times = np.concatenate(([0.0], t))
        values = np.concatenate((v, [0.0]))
        mat = np.column_stack((times, values)).astype(dtype)
        try:
            out.append(Pcf(mat, dtype=dtype))
        except errors.NonIncreasingTimes:
            # Narrow-dtype rounding merged two times; extremely rare.
            out.append(synthetic_benchmark(1, gen, dtype=dtype)[0])
    return out
