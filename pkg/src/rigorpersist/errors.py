"""Exception types shared across the library."""


class RigorPersistError(Exception):
    """Base class for all library errors."""


class DivisionByZeroInterval(RigorPersistError):
    """Divisor interval contains zero."""


class DomainViolation(RigorPersistError):
    """An argument interval or point leaves the mathematical domain.

    Carries ``cell_axes`` when raised while evaluating over a cell of an
    approximation run, so callers can report which rectangle failed.
    """

    def __init__(self, message: str, cell_axes=None):
        super().__init__(message)
        self.cell_axes = cell_axes


class InvalidEpsilon(RigorPersistError):
    """Approximation tolerance must be a positive finite number."""


class DegenerateAxis(RigorPersistError):
    """Domain box has an axis of zero width."""


class CutOutsideInterior(RigorPersistError):
    """Subdivision cut does not lie strictly inside the cell's axis."""


class CellAbsent(RigorPersistError):
    """Referenced cell id is not (or no longer) in the complex."""


class PointOutsideDomain(RigorPersistError):
    """Evaluation point lies outside the approximated box."""


class IncompleteApproximation(RigorPersistError):
    """Operation requires a Complete approximation."""


class NonMonotoneFiltration(RigorPersistError):
    """A face appears after one of its cofaces, or with a larger value."""


class ExpressionSyntaxError(RigorPersistError):
    """Malformed expression text; ``position`` is a 0-based character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownIdentifier(ExpressionSyntaxError):
    """Identifier is neither a declared variable, a function, nor pi/e."""


class NonIntegerExponent(ExpressionSyntaxError):
    """Exponent after ^ is not a nonnegative integer literal."""
