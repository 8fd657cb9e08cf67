"""Exception hierarchy shared across the package."""


class ProgsrError(Exception):
    """Base class for all library errors."""


class ShapeError(ProgsrError):
    """A volume, map, or vector has an incompatible or degenerate shape."""


class RangeError(ProgsrError):
    """Values fall outside their required domain (e.g. outside [0, 1], NaN)."""


class InvalidThreshold(ProgsrError):
    """A threshold parameter is outside its valid range."""


class ConfigError(ProgsrError):
    """Inconsistent or invalid configuration."""


class DataError(ProgsrError):
    """Dataset-level problem: empty dataset, mixed videos, missing labels."""


class ParseError(ProgsrError):
    """A file could not be parsed; message carries line/byte diagnostics."""


class IoError(ProgsrError):
    """Filesystem-level failure while reading or writing artifacts."""


class StageError(ProgsrError):
    """A progressive stage was requested that the model has not built."""


class TransitionError(ProgsrError):
    """grow() was called while a fade-in transition is still in progress."""


class DomainError(ProgsrError):
    """Numerical domain violation inside a loss (non-finite logits)."""


class CheckpointError(ProgsrError):
    """Checkpoint contents are incompatible with the receiving model."""


class VersionError(CheckpointError):
    """Checkpoint format version is not supported."""
