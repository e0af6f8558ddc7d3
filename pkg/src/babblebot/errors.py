"""Exception types shared across the package."""


class BabblebotError(Exception):
    """Base class for all package errors."""


class ConfigInvalid(BabblebotError):
    """A session or experiment configuration fails validation."""


class DegenerateConfig(ConfigInvalid):
    """A configuration under which no need can ever cross the expression
    threshold (detected by the decay-loop safety cap)."""


class CapacityExceeded(BabblebotError):
    """More words requested than the syllable set can form."""


class EmptyVocabulary(BabblebotError):
    """Word selection attempted over an empty vocabulary."""


class UnknownPair(BabblebotError):
    """A (need, word) pair that is not in the value table."""


class DimensionMismatch(BabblebotError):
    """Vector or matrix shapes do not agree."""


class NotOneHot(BabblebotError):
    """Internal-state target is not a one-hot vector."""


class UnlabeledCluster(BabblebotError):
    """Recognition hit a map node with no label evidence yet; callers fall
    back to ground-truth object identity."""


class UnexpectedInput(BabblebotError):
    """An object was supplied outside the awaiting-object phase, or was
    missing inside it."""


class SessionTerminated(BabblebotError):
    """advance() called on a finished session."""


class RangeViolation(BabblebotError):
    """A survey rating outside the 1..5 scale."""


class IndexOutOfRange(BabblebotError):
    """Metric index outside the reward series."""


class EmptyInput(BabblebotError):
    """Aggregate requested over zero reward series."""


class IoFailure(BabblebotError):
    """Filesystem operation failed (unwritable dir, missing files)."""


class NoLogsFound(IoFailure):
    """A results directory contains zero episode logs."""


class CorruptLog(BabblebotError):
    """An episode log violates the schema or its internal consistency
    rules; the message names the offending file/field."""


class Mismatch(BabblebotError):
    """Cached derived files disagree with a recompute from raw logs."""
