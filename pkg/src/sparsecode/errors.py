"""Exception types raised across the package."""


class SparseCodeError(Exception):
    """Base class for all package errors."""


class CompositeOrder(SparseCodeError, ValueError):
    """Field order is not prime."""


class FieldMismatch(SparseCodeError, ValueError):
    """Operands live in different fields."""


class ZeroInverse(SparseCodeError, ZeroDivisionError):
    """Attempt to invert the zero element."""


class EmptyBlock(SparseCodeError, ValueError):
    """Block length would be zero."""


class DomainError(SparseCodeError, ValueError):
    """Argument outside the domain of a formula."""


class MacWilliamsViolation(SparseCodeError, ArithmeticError):
    """Transform produced a non-integral or negative count."""


class PreconditionError(SparseCodeError, ValueError):
    """Operation called outside its stated precondition."""


class NoTestVectors(SparseCodeError):
    """The dual code has no codewords of the requested weight."""


class NoCorrectionVectors(SparseCodeError):
    """No dual codeword of the requested weight is nonzero at the index."""


class ScanTooLarge(SparseCodeError):
    """An exhaustive enumeration exceeds the configured guard."""


class BiasUnreachable(SparseCodeError):
    """Random generation could not meet the requested bias."""

    def __init__(self, message: str, best_bias=None):
        super().__init__(message)
        self.best_bias = best_bias


class ParseError(SparseCodeError, ValueError):
    """Malformed code, word, or report file."""
