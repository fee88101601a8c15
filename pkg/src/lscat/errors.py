"""Exception hierarchy shared by every module."""


class LSError(Exception):
    """Base class for all errors raised by lscat."""


class InputError(LSError):
    """Malformed or invalid input (CLI exit code 2)."""


class CycleDetected(InputError):
    pass


class UnknownPoint(InputError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotMonotone(InputError):
    pass


class InvalidFence(InputError):
    pass


class NotLyapunov(InputError):
    def __init__(self, message: str, point: str | None = None):
        self.point = point
        super().__init__(message)


class NotDeformation(InputError):
    pass


class EmptySet(InputError):
    pass


class BudgetExceeded(LSError):
    """A search exceeded its configured node or enumeration budget (exit code 3).

    Never a verdict: callers must not read it as "no".
    """


class CriticalityViolation(LSError):
    """A min-max value landed on a non-critical level; indicates a defect."""
