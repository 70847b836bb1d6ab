"""Error types shared across the engine.

Every error carries a stable string ``code`` that is preserved verbatim in
CLI error records and API error payloads, so downstream tooling can match on
it without parsing messages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class RangeMatchError(Exception):
    """Base class for all engine errors."""

    code = "Error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def record(self) -> dict[str, Any]:
        """One machine-parsable record: code, message, optional details."""
        rec: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.details:
            rec["details"] = self.details
        return rec


class UnknownAttributeError(RangeMatchError):
    code = "UnknownAttribute"


class UnknownValueError(RangeMatchError):
    code = "UnknownValue"


class InvalidSchemaError(RangeMatchError):
    """Schema file is malformed or carries an unsupported version."""

    code = "InvalidSchema"


class InvalidCatalogError(RangeMatchError):
    code = "InvalidCatalog"


class MalformedProfileError(RangeMatchError):
    code = "MalformedProfile"


class MissingRowError(RangeMatchError):
    code = "MissingRow"


class SchemaMismatchError(RangeMatchError):
    code = "SchemaMismatch"


class DuplicateAttributeError(RangeMatchError):
    code = "DuplicateAttribute"


class EmptyMatrixError(RangeMatchError):
    code = "EmptyMatrix"


class EmptyCompareError(RangeMatchError):
    code = "EmptyCompare"


@dataclass(frozen=True)
class Diagnostic:
    """One dataset finding; ``line`` is 1-based (header is line 1).

    ``key`` carries the identifying payload (e.g. attribute/value pair) and is
    what stays stable when input rows are permuted.
    """

    code: str
    message: str
    line: int | None = None
    key: tuple = ()
    details: dict = field(default_factory=dict)

    def record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.line is not None:
            rec["line"] = self.line
        if self.details:
            rec["details"] = self.details
        return rec


class DatasetValidationError(RangeMatchError):
    """Raised when parsing a dataset hits one or more hard errors."""

    code = "DatasetInvalid"

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        first = diagnostics[0]
        super().__init__(f"{len(diagnostics)} dataset error(s); first: {first.message}")
        self.diagnostics = tuple(diagnostics)
