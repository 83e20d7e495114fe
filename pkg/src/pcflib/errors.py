"""Exception hierarchy for pcflib.

All library errors derive from :class:`PcfError` so callers can catch the
whole family in one clause.  Construction/validation errors are raised
eagerly; numerical errors (divergence, NaN) are raised from the operation
that first observes them.
"""


class PcfError(Exception):
    pass


class Empty(PcfError):
    """Zero rows were supplied where at least one point is required."""


class NonZeroStart(PcfError):
    """The first time coordinate is not exactly 0."""


class NonIncreasingTimes(PcfError):
    """Time coordinates contain a duplicate or a decrease."""


class NonFinite(PcfError):
    """A NaN or infinity appeared where a finite number is required."""


class NegativeTime(PcfError):
    """Evaluation was requested at t < 0."""


class MixedPrecision(PcfError):
    """A binary operation received one 32-bit and one 64-bit operand."""


class InvalidBounds(PcfError):
    """Integration bounds violate 0 <= a < b."""


class DivergentIntegral(PcfError):
    """An integral over [a, inf) has a nonzero unbounded tail.

    ``pair`` holds the offending (i, j) collection indices when the error
    surfaced from a pairwise-matrix job, else None.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class EmptyCollection(PcfError):
    """A reduction or matrix operation received zero inputs."""


class InsufficientData(PcfError):
    """Fewer inputs than the statistic requires (e.g. std of one PCF)."""


class ShapeMismatch(PcfError):
    """Assignment between containers of different shapes."""


class OutOfBounds(PcfError):
    """An index (or a negative index, unsupported) is outside the extent."""


class InvalidStep(PcfError):
    """A slice step that is zero or negative."""


class BadDimension(PcfError):
    """A dimension argument outside the container's rank."""


class ZeroExtent(PcfError):
    """A requested array shape contains an extent < 1."""


class BadShape(PcfError):
    """A generator received an unusable shape specification."""


class Cancelled(PcfError):
    """A matrix job was cancelled before completion; partial work discarded."""
