"""Exception hierarchy.

The CLI maps these onto exit codes: InputError -> 2, HypothesisError -> 3,
MathFailure (and any verification that fails mathematically) -> 1.
"""


class HopfextError(Exception):
    pass


class FieldMismatchError(HopfextError):
    """Operands carry different field tags."""


class DimensionError(HopfextError):
    """Shapes or degrees do not line up."""


class TruncationError(HopfextError):
    """A degree outside the certified window was requested."""


class InputError(HopfextError):
    """Malformed user input (parse errors, bad flags)."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class HypothesisError(HopfextError):
    """A standing hypothesis of the statement under test is violated.

    Distinct from a mathematical failure: an unmet hypothesis must never be
    reported as a counterexample.
    """


class MathFailure(HopfextError):
    """A structural verification failed on mathematically valid input."""
