"""Exception hierarchy shared by all modules."""


class ZeroFreeError(Exception):
    """Base class for errors raised by this package."""


class InputError(ZeroFreeError, ValueError):
    """Malformed or out-of-range input."""


class DomainError(ZeroFreeError, ValueError):
    """Parameter outside the mathematical domain of a formula."""


class ResourceError(ZeroFreeError):
    """A size cap was exceeded."""


class NumericalError(ZeroFreeError, ArithmeticError):
    """An iterative method failed to reach the requested accuracy."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class SingularityError(ZeroFreeError, ZeroDivisionError):
    """Hit |1 + z| below the singularity threshold."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class InexactDivisionError(ZeroFreeError, ArithmeticError):
    """Integer polynomial long division produced a fractional coefficient."""


class InvariantError(ZeroFreeError, AssertionError):
    """An internal invariant failed; usually a parameter outside the admissible range."""
