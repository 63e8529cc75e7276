"""Exception types shared across the package."""


class AnlsStarError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(AnlsStarError):
    """Input document is not well-formed (bad syntax, duplicate keys, bad record shape)."""


class TupleInPrediction(AnlsStarError):
    """A one-of wrapper appeared in a prediction document; only ground truth may use it."""


class EmptyTuple(AnlsStarError):
    """A one-of wrapper carried an empty set of alternatives."""


class NonFiniteNumber(AnlsStarError):
    """A NaN or infinite number cannot be canonicalized to a string."""


class DepthExceeded(AnlsStarError):
    """Tree nesting exceeded the configured recursion limit."""


class DuplicateId(AnlsStarError):
    """Two records in the same document set share a sample id."""


class EmptyGroundTruth(AnlsStarError):
    """Batch evaluation requires at least one ground-truth sample."""


class SinkWriteError(AnlsStarError):
    """Writing a report to its destination failed."""
