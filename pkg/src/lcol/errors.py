"""Exception types shared across the package."""


class LcolError(Exception):
    """Base class for all package errors."""


class PreconditionError(LcolError, ValueError):
    """An operation was called on input outside its contract.

    ``witness`` carries whatever object demonstrates the violation
    (a Gallai-tree component, a K5 minor model, a distance value, ...).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(LcolError):
    """An exact search ran out of its node budget."""

    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


class InternalConsistencyError(LcolError, AssertionError):
    """A branch that a correct input can never reach was reached."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InstanceParseError(LcolError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class InfeasibleOptions(LcolError, ValueError):
    """Generator options cannot be realised."""


class ColorClash(LcolError, ValueError):
    """Requested gadget colors collide with reserved colors."""
