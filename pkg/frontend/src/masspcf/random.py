"""Random PCF array generation (noisy trigonometric curves)."""

from __future__ import annotations

import numpy as np

import pcflib as _pl

__all__ = ["noisy_sin", "noisy_cos"]


def _wrap(core_array):
    from . import Array
    return Array(core_array)


def noisy_sin(shape, n_points, sigma=0.1, rng=None, dtype=np.float64):
    """Array of noisy sine PCFs: values sin(2 pi t) + N(0, sigma) at
    sorted uniform times on [0, 1] with t=0 prepended."""
    return _wrap(_pl.noisy_sin(shape, n_points, sigma=sigma, rng=rng, dtype=dtype))


def noisy_cos(shape, n_points, sigma=0.1, rng=None, dtype=np.float64):
    """Array of noisy cosine PCFs; see :func:`noisy_sin`."""
    return _wrap(_pl.noisy_cos(shape, n_points, sigma=sigma, rng=rng, dtype=dtype))
