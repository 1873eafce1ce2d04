"""Exception and warning types raised across the package."""


class EgnhError(Exception):
    """Base class for all package errors."""


class DomainError(EgnhError, ValueError):
    """An argument lies outside the support or parameter space."""


class NonConvergence(EgnhError, ArithmeticError):
    """A series could not be summed to the requested tolerance.

    Raised both for genuinely divergent expansions and for series whose
    terms cancel so badly that double precision cannot reach the tolerance.
    """


class SeriesOracleMismatch(EgnhError, ArithmeticError):
    """A series value disagrees with its quadrature cross-check."""


class QuadratureFailure(EgnhError, ArithmeticError):
    """Adaptive quadrature could not meet the requested tolerance."""


class NoConvergence(EgnhError, RuntimeError):
    """Every optimizer start failed to produce a usable maximum."""


class UndefinedStatistic(EgnhError, ValueError):
    """A goodness-of-fit statistic is undefined for the given input."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DataError(EgnhError, ValueError):
    """Input data could not be parsed or failed validation."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class SingularInformation(UserWarning):
    """The observed information matrix is not positive definite."""


class IdentifiabilityWarning(UserWarning):
    """Fitted NH power shape is numerically equal to one."""


class SeriesPrecisionWarning(UserWarning):
    """A series result lost precision to cancellation."""


class BoundaryWarning(UserWarning):
    """An estimate sits on a box constraint of the optimizer."""


class DegenerateEstimate(UserWarning):
    """The closed-form shape estimate collapsed to zero or infinity."""
