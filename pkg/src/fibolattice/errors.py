"""
Exception hierarchy for the fibolattice package.

- LatticeError is the root of everything raised on purpose by the library.
- InvalidInputError (also a ValueError) covers every rejected argument.
- SizeGuardError signals that a configured materialization limit would be hit.
- IllegalInsertionError signals an inconsistent Motzkin replay.

The command line maps InvalidInputError to exit code 2 and SizeGuardError to
exit code 3.
"""


class LatticeError(Exception):
    """Base class for all errors raised by fibolattice."""


class InvalidInputError(LatticeError, ValueError):
    """An argument violates the documented preconditions."""


class MalformedPathError(InvalidInputError):
    """Step string is unbalanced or dips below the axis."""


class BadCharacterError(InvalidInputError):
    """Step string contains a character other than the allowed letters."""


class EmptyPathError(InvalidInputError):
    """Operation undefined on the empty path."""


class NotInFamilyError(InvalidInputError):
    """Path is not a member of the requested family."""


class LengthMismatchError(InvalidInputError):
    """Operands have different semilengths."""


class PatternViolationError(InvalidInputError):
    """Motzkin word contains a forbidden factor."""


class QuarterPlaneViolationError(InvalidInputError):
    """Motzkin word goes below the axis."""


class InvalidWordError(InvalidInputError):
    """Sequence is not a valid Catalan word of the family."""


class InvalidCompositionError(InvalidInputError):
    """Sequence is not a valid composition of the family."""


class InvalidSubsetError(InvalidInputError):
    """Set is not a valid subset representation of the family."""


class TotalMismatchError(InvalidInputError):
    """Compositions being compared do not have the same total."""


class AmbientMismatchError(InvalidInputError):
    """Subsets being compared live in different ambient ranges."""


class EmptyIntervalError(InvalidInputError):
    """Operation undefined on intervals of semilength zero."""


class NonUnitDenominatorError(InvalidInputError):
    """Series division by something that is not invertible."""


class BadConstantTermError(InvalidInputError):
    """Series square root of something whose constant term is not 1."""


class SizeGuardError(LatticeError, RuntimeError):
    """A materialization would exceed the configured size guard."""


class IllegalInsertionError(LatticeError, RuntimeError):
    """A Motzkin replay step asked for an insertion the family forbids."""
