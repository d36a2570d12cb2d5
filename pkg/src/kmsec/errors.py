"""Exception hierarchy shared by every module."""


class KmsecError(Exception):
    """Base class for all library errors."""


class DomainError(KmsecError, ValueError):
    """Arguments outside the supported domain (including non-finite input)."""


class PoleError(DomainError):
    """Argument sits on (or within guard distance of) a Gamma-function pole."""


class ConvergenceError(KmsecError, ArithmeticError):
    """An iterative method exhausted its budget before meeting tolerance.

    ``diagnostics`` carries whatever partial information the method collected.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class SeriesDivergenceError(ConvergenceError):
    """The ratio test indicates the series diverges (or is too slow to be useful)."""


class IntegrandError(KmsecError, ArithmeticError):
    """Integrand returned a non-finite value."""

    def __init__(self, message, abscissa):
        super().__init__(message)
        self.abscissa = abscissa
