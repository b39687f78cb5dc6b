"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`AutomanifoldError`, and carries a ``category`` used by the CLI to
pick an exit code.
"""


class AutomanifoldError(Exception):
    category = "numerical"


class DomainError(AutomanifoldError, ValueError):
    """An argument lies outside the operation's valid domain."""

    category = "usage"


class ParseError(AutomanifoldError, ValueError):
    """Malformed input file. ``row`` and ``column`` are 1-based when known."""

    category = "parse"

    def __init__(self, message, row=None, column=None):
        loc = []
        if row is not None:
            loc.append(f"row {row}")
        if column is not None:
            loc.append(f"column {column}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)
        self.row = row
        self.column = column


class NumericalError(AutomanifoldError, ArithmeticError):
    category = "numerical"


class IntegrationError(NumericalError):
    """Adaptive step size underflow; ``t`` is the time reached."""

    def __init__(self, message, t):
        super().__init__(f"{message} at t={t:.6g}")
        self.t = t


class DivergenceError(NumericalError):
    def __init__(self, message, t):
        super().__init__(f"{message} at t={t:.6g}")
        self.t = t


class WalkError(AutomanifoldError, RuntimeError):
    category = "numerical"


class TrainingError(NumericalError):
    def __init__(self, message, epoch):
        super().__init__(f"{message} (epoch {epoch})")
        self.epoch = epoch
