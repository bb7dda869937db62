class QlocException(Exception):
    """Common base for all qlocal exceptions."""

    def __str__(self):
        """Text representation of the exception."""
        return super().__str__()


class InvalidInput(QlocException):
    """Raised when an operation receives input it cannot work with.

    :param message: What was wrong with the input.
    """

    def __init__(self, message: str):
        self.message: str = message

    def __str__(self) -> str:
        return f"Invalid input: {self.message}"


class EmptyState(QlocException):
    """Raised when truncation removes every amplitude of a state."""

    def __init__(self, message: str):
        self.message: str = message

    def __str__(self) -> str:
        return f"Empty state: {self.message}"


class SectorViolation(QlocException):
    """Raised when the sector backend meets a gate leaving its subspace.

    :param op_index: Index of the offending op in the circuit.
    :param kind: Gate kind of the offending op.
    """

    def __init__(self, op_index: int, kind: str):
        self.op_index: int = op_index
        self.kind: str = kind

    def __str__(self) -> str:
        return (
            f"Op #{self.op_index} ({self.kind}) does not preserve "
            "the excitation number."
        )


class CircuitFormatError(QlocException):
    """Raised when a serialized circuit cannot be parsed.

    :param line_no: One-based line number.
    :param message: Description of the problem.
    """

    def __init__(self, line_no: int, message: str):
        self.line_no: int = line_no
        self.message: str = message

    def __str__(self) -> str:
        return f"Circuit format error on line {self.line_no}: {self.message}"


class EstimatorError(QlocException):
    """Raised when an estimator cannot be evaluated on the given shots."""

    def __init__(self, message: str):
        self.message: str = message

    def __str__(self) -> str:
        return self.message


class ConvergenceError(QlocException):
    """Raised when an iterative solver breaks its own guarantees."""

    def __init__(self, message: str):
        self.message: str = message

    def __str__(self) -> str:
        return self.message


class PipelineStageError(QlocException):
    """Raised when a stage of the Anderson pipeline fails.

    :param stage: Stage name.
    :param message: Exception message.
    """

    def __init__(self, stage: str, message: str):
        self.stage: str = stage
        self.message: str = message

    def __str__(self) -> str:
        return f"Error in pipeline stage {self.stage}: {self.message}"


class ManifestError(QlocException):
    """Raised when an experiment manifest is not valid.

    :param path: Path to the manifest, if it was loaded from a file.
    :param message: Exception message.
    """

    def __init__(self, path: str | None, message: str):
        self.path = path
        self.message = message

    def __str__(self) -> str:
        if self.path is None:
            return f"Manifest error: {self.message}"
        return f'Manifest error in "{self.path}": {self.message}'


class UnknownFigure(QlocException):
    """Raised when a figure id is not recognized.

    :param figure_id: Requested id.
    :param valid_ids: Ids that can be regenerated.
    """

    def __init__(self, figure_id: str, valid_ids: list[str]):
        self.figure_id = figure_id
        self.valid_ids = valid_ids

    def __str__(self) -> str:
        return (
            f'Unknown figure "{self.figure_id}". '
            f"Valid ids are: {', '.join(self.valid_ids)}."
        )
