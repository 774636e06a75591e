"""Exception types shared across the package."""


class PITError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(PITError, ValueError):
    """Objects over different prime fields (or variable counts) were combined."""


class ResourceError(PITError, RuntimeError):
    """A computation would exceed a configured term or point budget."""


class CircuitError(PITError, ValueError):
    """A circuit or gate violates the unmixed model or an operation's precondition."""


class InvariantError(PITError, AssertionError):
    """Two independent computations that must agree did not."""


class CircuitParseError(PITError, ValueError):
    """Malformed circuit text. Carries the 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
