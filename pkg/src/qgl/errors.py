"""Shared error types of the engine.

Every failure that a caller can sensibly handle is a subclass of
DomainError; the CLI maps DomainError to exit code 3 and syntax
problems (ExprSyntaxError) to exit code 2.
"""


class DomainError(Exception):
    """A mathematically meaningful failure (bad index, non-integral element, ...)."""


class ExprSyntaxError(Exception):
    """Malformed input expression; carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__("%s (at offset %d)" % (message, offset))
        self.offset = offset


class IndexOutOfShape(DomainError):
    """A generator index does not fit inside the shape (m, n)."""


class NegativeDividedPower(DomainError):
    """Divided-power exponent must be a nonnegative integer."""


class OddPowerTooHigh(DomainError):
    """Odd root vectors square to zero; divided powers >= 2 are undefined."""


class DenominatorVanishes(DomainError):
    """A rational function has a pole at the requested root of unity."""


class NotIntegral(DomainError):
    """Element lies outside the divided-power integral form.

    Carries a witness (basis key, coefficient) showing the failure.
    """

    def __init__(self, witness_key, coefficient):
        super().__init__(
            "element is not integral: coefficient %s at %s"
            % (coefficient, (witness_key,))
        )
        self.witness_key = witness_key
        self.coefficient = coefficient


class BraidAtOddNode(DomainError):
    """Braid operators are only defined at even simple roots (index != m)."""


class NonDominant(DomainError):
    """Weight is not dominant for the two gl blocks."""


class OutOfRestrictedRange(DomainError):
    """z-weight is outside the restricted range for the given root order l."""


class NotHighestWeight(DomainError):
    """Operation requires a module generated by its top weight vector."""


class BadRootOrder(DomainError):
    """Root-of-unity order must be an odd integer >= 3."""
