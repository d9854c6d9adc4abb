"""Exception types shared across the package."""

from __future__ import annotations


class SimpdepthError(Exception):
    """Base class for all package-specific errors."""

    code = "error"


class InputError(SimpdepthError):
    """Invalid argument: dimension mismatch, bad sizes, malformed spec."""

    code = "input-error"


class DegeneracyError(SimpdepthError):
    """Degenerate input rejected under a strict general-position request."""

    code = "degeneracy-error"


class ParseError(InputError):
    """Malformed configuration file; carries a 1-based line/column position."""

    code = "parse-error"

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ExtractionExhausted(SimpdepthError):
    """Best-effort extraction ran out of containing rainbow tuples.

    Carries the parts found so far so callers can inspect partial progress.
    """

    code = "extraction-exhausted"

    def __init__(self, message: str, parts):
        super().__init__(message)
        self.parts = parts


class CertificationError(SimpdepthError):
    """An internal consistency check of a certified search failed."""

    code = "certification-error"
