"""Exception hierarchy shared by all sscdist modules."""


class SscError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SscError, ValueError):
    """Distribution or configuration parameters outside their legal range."""


class DomainError(SscError, ValueError):
    """A function argument outside the domain of the requested operation."""


class DegenerateRateError(ParameterError):
    """Extreme-value normalization requested where the rate degenerates."""


class ConvergenceError(SscError, RuntimeError):
    """Numerical inversion did not reach the requested accuracy.

    Attributes
    ----------
    last_value : float
        Best abscissa found before giving up.
    last_bracket : tuple[float, float] | None
        Bracketing interval at the point of failure, when one exists.
    """

    def __init__(self, message, last_value, last_bracket=None):
        super().__init__(message)
        self.last_value = last_value
        self.last_bracket = last_bracket
