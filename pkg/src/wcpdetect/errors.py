"""Exception types shared across the package."""


class ModelError(ValueError):
    """Raised when an operation receives inputs outside the causal model."""


class TraceFormatError(ModelError):
    """A trace file could not be parsed.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the problem is not tied to a single line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class OracleTooLarge(ModelError):
    """The brute-force oracle refused an instance above its size guard."""


class InvariantError(RuntimeError):
    """An internal invariant failed. This signals a bug, never bad data."""
