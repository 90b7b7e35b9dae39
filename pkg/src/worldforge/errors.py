"""Exception types shared across the package."""


class WorldforgeError(Exception):
    """Base class for package errors."""


class ContractViolation(WorldforgeError):
    """An operation was called outside its stated precondition."""


class MagicMismatchError(WorldforgeError):
    """Episode file does not start with the expected magic bytes."""


class VersionMismatchError(WorldforgeError):
    """Episode file carries an unsupported format version."""


class TruncationError(WorldforgeError):
    """Episode file payload is shorter than its header promises."""


class ShapeMismatchError(WorldforgeError):
    """Array shape is inconsistent with the declared header or config."""


class EmptyPoolError(WorldforgeError):
    """No stored episode satisfies the sampling precondition."""


class ZeroNormCodeError(WorldforgeError):
    """A codebook row has zero norm, so cosine distance is undefined."""

    def __init__(self, row: int):
        self.row = row
        super().__init__(f"codebook row {row} has zero norm")


class TrainingDivergedError(WorldforgeError):
    """Training loss became non-finite."""


class MissingDependencyError(WorldforgeError):
    """A pipeline stage was requested before its inputs exist."""
