"""Exceptions shared across the library."""


class ConfigurationError(ValueError):
    """Mismatched truncation orders, unknown generators, mixed algebras."""


class SingularSeriesError(ArithmeticError):
    """Series inversion attempted on a series whose leading coefficient is not a unit."""


class SingularMatrixError(ArithmeticError):
    """Matrix inversion attempted on a series matrix with non-invertible constant term."""


class GenericityError(ArithmeticError):
    """A weight failed a genericity condition, or an H-denominator vanished.

    Carries enough context to reproduce: the offending value and where it appeared.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class DegeneracyError(ArithmeticError):
    """A rank-1 extraction or similar structural step degenerated unexpectedly."""
