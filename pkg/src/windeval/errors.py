"""Exception types carrying stable, machine-readable error codes.

Codes (e.g. ``"shape-mismatch"``, ``"point-outside-grid"``) are part of the
public contract: the CLI prints them and maps the exception class to its exit
code, and language bindings translate them into host exceptions.
"""


class WindEvalError(Exception):
    """Base class for all windeval errors."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code

    def __str__(self) -> str:
        return f"[{self.code}] {self.args[0]}"


class ValidationError(WindEvalError):
    """Invalid input values or violated operation preconditions (CLI exit 2)."""


class DataIOError(WindEvalError):
    """Missing, unreadable or malformed files on disk (CLI exit 3)."""
