"""Exception hierarchy shared by every ivmono module."""


class IntervalError(Exception):
    """Base class for all ivmono errors."""


class ConstructionError(IntervalError, ValueError):
    """An interval was built with lo > hi or a NaN endpoint."""


class DomainError(IntervalError, ValueError):
    """An operation was applied outside the set it is defined on."""


class RangeError(IntervalError, ValueError):
    """An expression evaluated to an interval outside [0, 1].

    ``point`` holds the argument vector that produced it.
    """

    def __init__(self, message, point=None, value=None):
        super().__init__(message)
        self.point = point
        self.value = value


class UnknownBuiltin(IntervalError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BadParams(IntervalError, ValueError):
    pass


class ExprSyntaxError(IntervalError, ValueError):
    """Parse failure in the expression language, with position information."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class ArityError(IntervalError, ValueError):
    pass


class DirectionError(IntervalError, ValueError):
    pass


class GContractError(IntervalError):
    """G failed ``G(X, Y) >= Y`` on at least one sampled pair.

    ``violations`` is a list of ``(lam, y, g_value)`` triples.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
