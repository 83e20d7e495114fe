"""pcflib: parallel machine-precision computations with piecewise
constant functions (PCFs).

A PCF is a right-continuous step function on [0, inf) stored as an
immutable time-value matrix.  The library computes exact integrals,
L_p distances and L_2 inner products of PCF pairs, pairwise matrices
over large collections, associative reductions (mean, std, arbitrary
ops), and offers shaped PCF arrays with views, random generators and a
batch CLI.

The hot sweep kernels live in a compiled extension with a pure-Python
fallback; see :func:`backend_name` / :func:`set_backend`.
"""

from . import errors
from ._backend import available_backends, get_backend, set_backend
from .core import (
    Pcf,
    add,
    apply_unary,
    evaluate,
    make_pcf,
    minimize_discretization,
    scale,
    zero_pcf,
)
from .datagen import RngSpec, noisy_cos, noisy_sin, noisy_trig, synthetic_benchmark
from .integrate import (
    CombinationIntegral,
    combine_integrate,
    combine_integrate_timedep,
    integrate_single,
    l2_inner_product,
    lp_distance,
)
from .matrix import (
    MatrixJob,
    PairwiseMatrix,
    l2_kernel,
    l2_kernel_job,
    pairwise,
    pairwise_job,
    pdist,
    pdist_job,
    progress_subscribe,
    resolve_workers,
)
from .ndarray import PcfArray, PcfView, Shape, mean_along, zeros
from .reduce import ReductionAccumulator, mean, reduce_pair, std, tree_reduce, variance
from .sweep import Rectangle, Segment, iterate_rectangles, iterate_segments

__version__ = "0.1.0"


def backend_name() -> str:
    """Name of the active kernel backend ('compiled' or 'python')."""
    return get_backend().name
