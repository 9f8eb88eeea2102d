"""Exception types raised by the library."""


class InputError(ValueError):
    """Malformed or inconsistent user input (sizes, ranges, file contents)."""


class InvalidTransformError(InputError):
    """An affine transform with zero scale."""


class UndefinedDensityError(ValueError):
    """The dominance density is requested for two equal distributions."""


class NumericFailure(ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate is kept on the exception so callers can
    decide whether it is good enough.
    """

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
