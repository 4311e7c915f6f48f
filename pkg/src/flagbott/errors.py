"""
Exception hierarchy for flagbott.

Every error carries a short machine-parsable code so that the CLI and the
MCP server can report failures as a single line: ``error: E_PARSE: ...``.
"""

from __future__ import annotations

import logging

logger = logging.getLogger(__name__)


# =============================================================================
# Exception Hierarchy
# =============================================================================


class FlagbottError(Exception):
    """Base exception for flagbott operations."""

    default_code = "E_FLAGBOTT"

    def __init__(
        self,
        message: str,
        code: str | None = None,
        original: Exception | None = None,
    ):
        super().__init__(message)
        self.code = code or self.default_code
        self.original = original


class ParseError(FlagbottError):
    """Malformed canonical text (partitions, integer lists, bundle forms)."""

    default_code = "E_PARSE"


class ValidationError(FlagbottError):
    """Input parses but violates a precondition (ordering, length, containment)."""

    default_code = "E_INPUT"


class InvariantViolation(FlagbottError):
    """A property that must hold for every computed object failed."""

    default_code = "E_INVARIANT"


class OracleError(FlagbottError):
    """Schur-basis expansion met a negative coefficient."""

    default_code = "E_ORACLE"


# Codes for exceptions raised outside this hierarchy
_FOREIGN_CODES: dict[type[Exception], str] = {
    ValueError: "E_VALUE",
    KeyError: "E_KEY",
    TypeError: "E_TYPE",
}


def error_code(e: Exception) -> str:
    """Return the machine-parsable code for any exception."""
    if isinstance(e, FlagbottError):
        return e.code
    for exc_type, code in _FOREIGN_CODES.items():
        if isinstance(e, exc_type):
            return code
    return "E_INTERNAL"


def is_user_error(e: Exception) -> bool:
    """True for errors caused by bad input (exit code 2 in the CLI)."""
    return isinstance(e, (ParseError, ValidationError))


def format_error(e: Exception) -> str:
    """One-line diagnostic: ``<CODE>: <message>``."""
    return f"{error_code(e)}: {e}"
