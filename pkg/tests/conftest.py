import math

import numpy as np
import pytest

import pcflib as pl

# -- independent oracles (deliberately naive; no sweep code) ---------


def brute_eval(f, t):
    """Linear scan over the stored rows; right-continuous convention."""
    mat = f.to_matrix()
    val = mat[0, 1]
    for i in range(mat.shape[0]):
        if mat[i, 0] <= t:
            val = mat[i, 1]
        else:
            break
    return float(val)


def union_grid(f, g, a=0.0, b=math.inf):
    """[a] + (times(f) | times(g)) strictly inside (a, b), sorted."""
    pts = set(f.times.tolist()) | set(g.times.tolist())
    return [a] + sorted(t for t in pts if a < t < b)


def grid_integral(f, g, h, a, b):
    """Explicit union-grid sum: sum h(f(s_i), g(s_i)) (s_{i+1} - s_i)."""
    s = union_grid(f, g, a, b) + [b]
    acc = 0.0
    for i in range(len(s) - 1):
        acc += h(brute_eval(f, s[i]), brute_eval(g, s[i])) * (s[i + 1] - s[i])
    return acc


def seq_fold(collection, h):
    """Sequential left fold with reduce_pair (the O(nM) chain)."""
    acc = collection[0]
    for g in collection[1:]:
        acc = pl.reduce_pair(acc, g, h)
    return pl.minimize_discretization(acc)


# -- random input makers ---------------------------------------------


def random_pcf(rng, size, dtype=np.float64, eventually_zero=False, tmax=10.0):
    times = np.concatenate(
        ([0.0], np.sort(rng.choice(np.arange(1, 20 * size) * (tmax / (20 * size)),
                                   size=size - 1, replace=False)))
        if size > 1 else ([0.0],)
    )
    values = np.round(rng.uniform(-5, 5, size), 3)
    if eventually_zero:
        values[-1] = 0.0
    return pl.make_pcf(np.column_stack((times, values)), dtype=dtype)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def f1():
    return pl.make_pcf([[0.0, 5.0], [2.0, 3.0], [5.0, 0.0]])


@pytest.fixture
def f2():
    return pl.make_pcf([[0.0, 2.0], [4.0, 7.0], [8.0, 1.0], [9.0, 0.0]])


@pytest.fixture
def f3():
    return pl.make_pcf([[0.0, 4.0], [2.0, 3.0], [3.0, 1.0], [5.0, 0.0]])


@pytest.fixture
def f4():
    return pl.make_pcf([[0.0, 2.0], [6.0, 1.0], [7.0, 0.0]])


@pytest.fixture
def guide_collection(f1, f2, f3, f4):
    return [f1, f2, f3, f4]


def rectangles_list(f, g, a, b):
    out = []
    pl.iterate_rectangles(f, g, a, b, out.append)
    return out


def segments_list(f, a, b):
    out = []
    pl.iterate_segments(f, a, b, out.append)
    return out
