"""Error types raised by the package."""


class InverseSquareError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(InverseSquareError, ValueError):
    """An argument is malformed, non-finite or of the wrong shape."""


class DomainError(InverseSquareError, ValueError):
    """The inputs lie outside the region where the quantity is defined."""


class PoleError(DomainError):
    """The evaluation point is a pole of the requested function."""


class UnsupportedParameterError(InverseSquareError, ValueError):
    """The parameter lies in an excluded set, e.g. an integer Bessel order."""


class RangeError(InverseSquareError, ArithmeticError):
    """A result would overflow or a series failed to converge."""


class AccuracyError(InverseSquareError, ArithmeticError):
    """A self-check or quadrature tolerance was not met.

    ``partial_value`` holds the best estimate available when the check failed.
    """

    def __init__(self, message, partial_value=None):
        super().__init__(message)
        self.partial_value = partial_value
