"""Exceptions shared across the solver modules."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed its configured budget; we refuse rather than approximate silently."""


class BallotParseError(ValueError):
    """Malformed ballot file. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SimplexError(RuntimeError):
    """The simplex solver failed numerically (iteration safeguard exhausted)."""
