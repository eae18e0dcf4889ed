"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid argument value or malformed specification."""


class DomainError(ValueError):
    """Input lies outside an estimator's domain (e.g. nonpositive order statistics)."""


class DegenerateDataError(ValueError):
    """Data are too degenerate for the requested statistic."""


class CertificationError(ArithmeticError):
    """A Lipschitz certificate could not be established."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class AccuracyError(ArithmeticError):
    """Quadrature failed to reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ValidationError(ValueError):
    """Experiment configuration failed validation; ``failures`` lists every problem."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))
