"""Exception classes for pipeline errors."""

from typing import Optional


class FnirsError(Exception):
    """
    Base class for pipeline exceptions.

    All library exceptions inherit from this class. ``stage`` names the
    pipeline stage that failed; it is filled in by ``observability.stage``
    when the raiser does not know it.
    """

    def __init__(
        self,
        message: str,
        error_code: str = "FNIRS_ERROR",
        stage: Optional[str] = None,
    ):
        """
        Initialize the exception.

        Args:
            message: Error message
            error_code: Machine-readable error code
            stage: Pipeline stage name, if known
        """
        self.message = message
        self.error_code = error_code
        self.stage = stage
        super().__init__(message)

    def cli_line(self) -> str:
        """Single machine-parsable line: ``error: <stage>: <message>``."""
        return f"error: {self.stage or 'pipeline'}: {self.message}"


class InvalidInputError(FnirsError):
    """
    Raised when arguments or domain invariants are violated.
    """

    def __init__(
        self,
        message: str = "Invalid input",
        error_code: str = "INVALID_INPUT",
        stage: Optional[str] = None,
    ):
        super().__init__(message=message, error_code=error_code, stage=stage)


class DataFormatError(FnirsError):
    """
    Raised when a file does not conform to its format.

    Row numbers are 1-based data rows (the header is not counted).
    """

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        row: Optional[int] = None,
        column: Optional[str] = None,
        error_code: str = "DATA_FORMAT",
        stage: Optional[str] = None,
    ):
        """
        Initialize the format exception.

        Args:
            message: Error message
            path: Offending file
            row: 1-based data row, if applicable
            column: Column name, if applicable
            error_code: Error code
            stage: Pipeline stage name
        """
        self.path = path
        self.row = row
        self.column = column
        location = []
        if path is not None:
            location.append(str(path))
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        full = f"{', '.join(location)}: {message}" if location else message
        super().__init__(message=full, error_code=error_code, stage=stage)


class SignalProcessingError(FnirsError):
    """
    Raised when a signal cannot be processed (bad band edges, short series, epoch bounds).
    """

    def __init__(
        self,
        message: str,
        error_code: str = "SIGNAL_PROCESSING",
        stage: Optional[str] = None,
    ):
        super().__init__(message=message, error_code=error_code, stage=stage)


class ConfigurationError(FnirsError):
    """
    Raised when configuration values are missing or inconsistent.
    """

    def __init__(
        self,
        message: str,
        error_code: str = "CONFIGURATION",
        stage: Optional[str] = "config",
    ):
        super().__init__(message=message, error_code=error_code, stage=stage)


class TrainingDivergedError(FnirsError):
    """
    Raised when training produces a non-finite value.

    ``layer`` names the first layer whose output (or the loss) became non-finite.
    """

    def __init__(self, layer: str, epoch: int, batch: int, stage: Optional[str] = None):
        self.layer = layer
        self.epoch = epoch
        self.batch = batch
        super().__init__(
            message=(
                f"non-finite value first produced by layer {layer} "
                f"(epoch {epoch}, batch {batch})"
            ),
            error_code="TRAINING_DIVERGED",
            stage=stage,
        )


class ContainerError(FnirsError):
    """
    Raised when a model container fails its magic, version, or checksum checks.
    """

    def __init__(
        self,
        message: str,
        error_code: str = "CONTAINER",
        stage: Optional[str] = None,
    ):
        super().__init__(message=message, error_code=error_code, stage=stage)


class PipelineError(FnirsError):
    """
    Wraps an unexpected failure inside a named stage.
    """

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message=message, error_code="PIPELINE", stage=stage)


class ConvergenceWarning(UserWarning):
    """Issued when an iterative fit stops at its iteration limit."""
