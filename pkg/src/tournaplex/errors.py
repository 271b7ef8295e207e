"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter problems exit 1, malformed or
invalid input data exits 2, internal consistency failures exit 3.
"""


class TournaplexError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TournaplexError):
    """Malformed input text. Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(TournaplexError):
    """Input data violates a structural invariant (self-loop, duplicate edge, ...)."""


class RangeError(TournaplexError):
    """A vertex or index lies outside its valid range."""


class ParameterError(TournaplexError):
    """A parameter value is outside its documented domain."""


class InvariantError(TournaplexError):
    """An internal consistency check failed; indicates a bug or unusable input."""
