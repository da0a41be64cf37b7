"""Error types shared by the library, the CLI and the tool server.

Every error carries a human-readable ``message`` and the exit code the CLI
reports for it.
"""


class OutOfOrderError(Exception):
    """Base class for all library errors."""

    exit_code = 1

    def __init__(self, message: str, exit_code: int | None = None):
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(message)


class ParseError(OutOfOrderError):
    """Raised on malformed regexes, table files and trace files."""

    exit_code = 2

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class AlgebraError(OutOfOrderError):
    """Raised when a table violates the semigroup or monoid laws."""

    exit_code = 2


class StreamError(OutOfOrderError):
    """Raised when a stream breaks the exactly-once delivery contract."""

    exit_code = 2


class FoolingSetError(OutOfOrderError):
    """Raised when a fooling set is structurally malformed."""

    exit_code = 2


class CapExceededError(OutOfOrderError):
    """Raised when an exhaustive computation would exceed its cap."""

    exit_code = 3

    def __init__(self, what: str, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(f"{what} needs {required} steps, cap is {cap}")


class InapplicableError(OutOfOrderError):
    """Raised when an evaluator or construction does not apply to a subject."""

    exit_code = 4
