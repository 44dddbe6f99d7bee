"""Exception types raised by monoext.

Every library error derives from :class:`MonoextError` so callers (the CLI in
particular) can separate them from programming errors.
"""


class MonoextError(Exception):
    """Base class for all monoext errors."""


class ShapeMismatch(MonoextError, ValueError):
    """Matrix shapes are inconsistent with each other or with ``n``."""


class NotFinite(MonoextError, ValueError):
    """A matrix contains NaN or infinite entries."""


class RankDeficient(MonoextError, ValueError):
    """``(A B)`` does not have full row rank.

    Use :func:`monoext.linrel.reduce_rows` to drop redundant rows first.
    """


class NotSquare(MonoextError, ValueError):
    pass


class NotSymmetric(MonoextError, ValueError):
    pass


class AmbientMismatch(MonoextError, ValueError):
    """Two subspaces (or a subspace and a vector) live in different spaces."""


class NotMonotone(MonoextError):
    """The operation requires a monotone relation."""


class NotMaximal(MonoextError):
    """The operation requires a maximally monotone relation."""


class BadWitness(MonoextError):
    """An N or M matrix (or its eigenbasis) is not a valid extension witness.

    ``reason`` is one of ``'rank'``, ``'psd'``, ``'shape'`` or ``'basis'``.
    """

    def __init__(self, reason, message):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class NotAnExtension(MonoextError):
    """Candidate relation does not contain the graph, or is not maximal."""


class InternalInconsistency(MonoextError, RuntimeError):
    """Two routes that must agree in exact arithmetic disagreed.

    Usually the instance is ill-conditioned relative to the tolerance.
    """


class BadParameters(MonoextError, ValueError):
    pass


class GenerationFailed(MonoextError, RuntimeError):
    pass


class NotApplicable(MonoextError):
    """The requested construction does not exist for this instance."""


class DependentGeneratorsWarning(UserWarning):
    """Range-form generators were linearly dependent and have been reduced."""
