"""Exception hierarchy shared by the solver modules and the CLI."""


class CCError(Exception):
    """Base class for every error raised by fptcc."""


class InputError(CCError, ValueError):
    """Malformed or inconsistent input (bad vertex ids, size mismatches, ...)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(CCError, ValueError):
    """A parameter is outside the range where the algorithm is defined."""


class BudgetExceeded(CCError):
    """An exact or enumerative routine would exceed its configured cap.

    ``lower_bound`` carries a proven lower bound on the quantity that blew the
    budget when one is known (e.g. the minimum vertex cover size).
    """

    def __init__(self, message, lower_bound=None):
        self.lower_bound = lower_bound
        super().__init__(message)


class PreconditionError(CCError):
    """A routine was called outside the case it is designed to handle."""


class InvariantViolation(CCError, AssertionError):
    """An internal consistency check failed."""
