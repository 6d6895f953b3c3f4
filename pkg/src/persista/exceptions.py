"""Exception hierarchy shared by all persista modules."""


class PersistaError(Exception):
    """Base class for every error raised by persista."""


class ValidationError(PersistaError, ValueError):
    """Input data violates a structural rule (closure, monotonicity, ranges)."""


class ParseError(ValidationError):
    """Malformed input file.

    ``location`` is a human readable pointer such as ``"line 4"``,
    ``"row 7"`` or ``"$.bars[2].death"``.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class InvariantError(PersistaError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
