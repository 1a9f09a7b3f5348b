"""Exception hierarchy shared by all modules."""


class ConfrenError(Exception):
    """Base class."""


class UsageError(ConfrenError, ValueError):
    """Mismatched operands or malformed requests."""


class PreconditionError(ConfrenError, ValueError):
    """An operation was applied outside its documented domain."""


class UnsupportedDomainError(ConfrenError):
    """The requested (D, n) class is not handled by the analytic engine."""


class ResonanceError(ConfrenError, ArithmeticError):
    """Euler eigenvalue m + h vanishes, so the homotopy cannot invert it."""

    def __init__(self, message, component=None, degree=None):
        super().__init__(message)
        self.component = component
        self.degree = degree


class ConsistencyError(ConfrenError):
    """A functional or map violated a structural property on a probe."""


class ResourceError(ConfrenError):
    """A finite slice exceeds the configured size cap."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class ParseError(UsageError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = " (line %d, column %d)" % (line, column or 0)
        super().__init__(message + loc)
        self.line = line
        self.column = column
