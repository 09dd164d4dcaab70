"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CorrgenError(Exception):
    """Base class for all errors raised by this package."""


class ParameterDomainError(CorrgenError, ValueError):
    """A distribution parameter is outside its admissible domain."""


class QuantileDomainError(CorrgenError, ValueError):
    """Quantile argument outside the open interval (0, 1)."""


class CorrelationRangeError(CorrgenError, ValueError):
    """Requested correlation lies outside the attainable range."""


class FactorizationError(CorrgenError, ValueError):
    """Correlation matrix cannot be written as an outer product of factors."""


class FeasibilityStopError(CorrgenError):
    """A feasibility gate failed; generation must not proceed."""


class NumericalAccuracyError(CorrgenError):
    """A numerical routine could not meet its accuracy target.

    Carries the best available estimate and its error bound so callers can
    decide whether the degraded result is still usable.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class DegenerateInputError(CorrgenError, ValueError):
    """Input data is degenerate (e.g. zero sample variance)."""


class ConfigError(CorrgenError, ValueError):
    """A run configuration is malformed.

    ``diagnostics`` lists every violation found, not just the first.
    """

    def __init__(self, diagnostics: list[str] | str):
        if isinstance(diagnostics, str):
            diagnostics = [diagnostics]
        super().__init__("; ".join(diagnostics))
        self.diagnostics = list(diagnostics)
