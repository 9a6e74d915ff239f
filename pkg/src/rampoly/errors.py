"""Exception hierarchy shared by every layer of the package."""


class RampolyError(Exception):
    """Base class for all package errors."""


class UnsupportedDiscriminantError(RampolyError, ValueError):
    """Raised when n is not a positive integer congruent to 11 mod 24."""


class InvalidFormError(RampolyError, ValueError):
    pass


class DomainError(RampolyError, ValueError):
    pass


class ResidualError(RampolyError, ArithmeticError):
    """A value that should be an integer is too far from one.

    Signals insufficient working precision; callers retry with more bits.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NeedsMorePrecisionError(ResidualError):
    pass


class PrecisionExhaustedError(RampolyError):
    pass


class RankError(RampolyError, ValueError):
    pass


class InconsistencyError(RampolyError):
    pass


class VerificationFailure(RampolyError):
    def __init__(self, message, failed=()):
        super().__init__(message)
        self.failed = tuple(failed)


class TheoremViolation(RampolyError):
    pass


class TableMismatch(RampolyError):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
