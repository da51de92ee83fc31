"""Exception types shared across the package."""


class StampsegError(ValueError):
    """Base class for all stampseg errors."""


class EmptyVideo(StampsegError):
    """A probability matrix or labeling with zero frames."""


class RowNotStochastic(StampsegError):
    """A probability row is outside [0, 1] or does not sum to 1 within tolerance."""


class NonMonotoneTimestamps(StampsegError):
    """Timestamp frames are not strictly increasing."""


class TimestampOutOfRange(StampsegError):
    """A timestamp frame lies outside [0, num_frames)."""


class PartitionMismatch(StampsegError):
    """A segment partition violates the integer tiling invariants."""


class NoTimestamps(StampsegError):
    """An operation that needs at least one timestamp got an empty set."""


class NonFiniteObjective(StampsegError):
    """The optimization objective became NaN or infinite."""


class InstanceTooLarge(StampsegError):
    """Exhaustive search would enumerate more states than the configured limit."""


class LabelMismatch(StampsegError):
    """A timestamp label disagrees with the ground truth at its frame."""


class LengthMismatch(StampsegError):
    """Two framewise sequences that must be equally long are not."""


class InvalidDuration(StampsegError):
    """A fixed-duration initialization shorter than one frame."""


class FormatError(StampsegError):
    """A file could not be parsed; the message names the file and offending field."""
