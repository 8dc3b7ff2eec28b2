from __future__ import annotations


class AffineError(Exception):
    """A generic exception for all others to extend."""
    pass


class InvalidAlgebraError(AffineError):
    """Raised when an algebra (or a part of one) is malformed."""
    pass


class UnknownSymbolError(InvalidAlgebraError):
    pass


class ArityError(InvalidAlgebraError):
    pass


class ElementRangeError(InvalidAlgebraError):
    pass


class CatalogError(AffineError):
    """Raised when a builtin algebra kind or its parameters are invalid."""
    pass


class AlgebraDocumentError(AffineError):
    """Raised when an algebra file can not be read."""
    pass


class TermSyntaxError(AffineError):
    """
    Raised by the term parser.

    `offset` is the byte offset of the offending token in the source.
    """
    def __init__(self, message, offset):
        super(TermSyntaxError, self).__init__('%s (at offset %d)' % (message, offset))
        self.offset = offset


class NonLinearTermError(AffineError):
    """Raised when a term meant to be affine contains the variable more than once."""
    pass


class ShapeMismatchError(AffineError):
    """Raised when a parameter tuple does not fit its skeleton."""
    pass


class BudgetExceededError(AffineError):
    """Raised when an enumeration or closure grows past its configured limit."""
    def __init__(self, message, limit):
        super(BudgetExceededError, self).__init__(message)
        self.limit = limit


class NotACongruenceError(AffineError):
    pass


class PreconditionError(AffineError):
    """
    Raised when a verifier's hypotheses fail.

    `violations` lists the law checks that did not hold, as dicts.
    """
    def __init__(self, message, violations=()):
        super(PreconditionError, self).__init__(message)
        self.violations = list(violations)
