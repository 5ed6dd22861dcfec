"""Exception hierarchy for sparsecut.

Every error raised on purpose by the library derives from SparseCutError and
carries a ``diagnostics`` dict that ends up verbatim in CLI reports.
"""

from typing import Any, Dict


class SparseCutError(Exception):
    """Base class for all library errors.

    Attributes:
        diagnostics: Free-form numbers and labels describing the failure.
    """

    def __init__(self, message: str, diagnostics: Dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


class InvalidArgumentError(SparseCutError, ValueError):
    """An argument violates an operation's precondition."""


class GraphParseError(InvalidArgumentError):
    """A graph file could not be parsed or is not simple and regular."""

    def __init__(self, message: str, line: int | None = None, diagnostics: Dict[str, Any] | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message, diagnostics)


class ResourceLimitError(SparseCutError):
    """The instance is larger than a configured cap."""


class SolverFailureError(SparseCutError):
    """The convex solver did not return a solution within tolerance."""


class RandomnessFailureError(SparseCutError):
    """A verify-and-retry loop exhausted its attempt budget."""


class DegenerateInputError(SparseCutError):
    """No threshold of the Frechet map separates the vertices."""


class ExtractionFailureError(SparseCutError):
    """Neither the cut branch nor the well-spread branch could be verified."""


class SamplingFailureError(SparseCutError):
    """No sampled cut metric satisfied the rounding conditions."""


class StageError(SparseCutError):
    """Wraps a failure inside the pipeline with the name of the stage."""

    def __init__(self, stage: str, cause: SparseCutError):
        super().__init__(f"[{stage}] {cause}", cause.diagnostics)
        self.stage = stage
        self.cause = cause
