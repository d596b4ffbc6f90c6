"""Exception hierarchy shared by the engine and the command line."""


class RelsingError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 3


class UsageError(RelsingError):
    exit_code = 1


class ParseError(RelsingError):
    """Malformed expression or input document.

    ``line`` and ``column`` are 1-based; ``column`` alone is used for
    single-line expressions.
    """

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class RingMismatch(RelsingError):
    pass


class MathPreconditionError(RelsingError):
    """A mathematical precondition of an operation does not hold."""


class TangencyError(MathPreconditionError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"vector field #{index} is not tangent to the variety")


class BoundExceeded(RelsingError):
    exit_code = 4
