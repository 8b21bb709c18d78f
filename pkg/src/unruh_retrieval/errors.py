"""Exception hierarchy.

Everything raised for bad input derives from :class:`ValidationError` (CLI exit
code 2). A post-selection with zero probability raises
:class:`DegenerateStateError` (exit code 3).
"""


class UnruhRetrievalError(Exception):
    """Base class for all package errors."""


class ValidationError(UnruhRetrievalError, ValueError):
    """Input failed a contract check."""


class DimensionError(ValidationError):
    pass


class SizeOverflowError(DimensionError):
    pass


class NonHermitianError(ValidationError):
    pass


class TraceError(ValidationError):
    pass


class NegativeEigenvalueError(ValidationError):
    pass


class NormalizationError(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class ReversalStrengthError(RangeError):
    """Reversal strength q = 1 makes the reversal undefined."""


class PreconditionError(ValidationError):
    pass


class DegenerateStateError(UnruhRetrievalError, ArithmeticError):
    """The post-selected branch has zero probability, so no state is defined."""


class DegenerateObjectiveWarning(UserWarning):
    """The optimized measure does not depend on q at this parameter point."""
