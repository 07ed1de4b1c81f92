from typing import Optional


class KanrenError(Exception):
    """Base class for every error raised by the engine, framework and frontend."""


class ConstraintSystemError(KanrenError, ValueError):
    """Bad constraint system registration or lookup (duplicate id, unknown key, bad arity)."""


class ArityError(KanrenError, TypeError):
    """A relation or constraint constructor was applied to the wrong number of terms."""

    def __init__(self, name: str, expected: int, got: int):
        self.name = name
        self.expected = expected
        self.got = got
        super().__init__(f"{name} expects {expected} argument(s), got {got}")


class ParseError(KanrenError):
    """Syntax or scope error in a program, with a 1-based source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class QueryTimeout(KanrenError):
    """Raised from stream pulling once a query's wall-clock budget is spent."""

    def __init__(self, seconds: Optional[float]):
        self.seconds = seconds
        super().__init__(f"query timed out after {seconds} second(s)")
