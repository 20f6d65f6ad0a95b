"""Exception types and non-fatal warning records shared across the toolkit.

Every exception carries a stable ``code`` string so the CLI can emit a
single-line machine-parsable diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass


class IgtError(Exception):
    """Base class for all operational errors."""

    code = "IGT_ERROR"


class MalformedRecordError(IgtError):
    """A corpus line violates the interchange format or a record invariant."""

    code = "MALFORMED_RECORD"

    def __init__(self, message: str, *, offset: int = 0, field: str = ""):
        super().__init__(message)
        self.offset = offset
        self.field = field


class BadRatiosError(IgtError):
    code = "BAD_RATIOS"


class EmptyLineError(IgtError):
    code = "EMPTY_LINE"


class BlockShapeError(IgtError):
    code = "BLOCK_SHAPE"


class TokenCountMismatchError(IgtError):
    code = "TOKEN_COUNT_MISMATCH"


class MalformedTokenError(IgtError):
    code = "MALFORMED_TOKEN"


class TableParseError(IgtError):
    code = "TABLE_PARSE_ERROR"

    def __init__(self, message: str, *, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class CycleDetectedError(IgtError):
    code = "CYCLE_DETECTED"

    def __init__(self, label: str):
        super().__init__(f"normalization cycle through label {label!r}")
        self.label = label


class EmptyCorpusError(IgtError):
    code = "EMPTY_CORPUS"


class LengthMismatchError(IgtError):
    code = "LENGTH_MISMATCH"


class TranslatorError(IgtError):
    code = "TRANSLATOR_ERROR"


class TranslatorTimeoutError(TranslatorError):
    code = "TRANSLATOR_TIMEOUT"


class TranslatorCountMismatchError(TranslatorError):
    code = "TRANSLATOR_COUNT_MISMATCH"


class TranslatorSpawnFailureError(TranslatorError):
    """Covers both failure to start the command and abnormal termination."""

    code = "TRANSLATOR_SPAWN_FAILURE"


class PipelineStageError(IgtError):
    """Wraps an error raised inside ``run_pipeline`` with the stage name."""

    code = "PIPELINE_STAGE_ERROR"

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class ParseWarning:
    """A non-fatal condition collected during parsing, never raised."""

    code: str
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = f" (line {self.line})" if self.line is not None else ""
        return f"{self.code}: {self.message}{where}"


BLOCK_SHAPE = "BLOCK_SHAPE"
UNKNOWN_MARKER = "UNKNOWN_MARKER"
EMPTY_RECORD = "EMPTY_RECORD"
SKIPPED_RECORD = "SKIPPED_RECORD"
TOKEN_COUNT_MISMATCH = "TOKEN_COUNT_MISMATCH"
