"""Exception hierarchy. Every failure raised by the library is a ScatterError."""


class ScatterError(Exception):
    """Base class for all library errors."""


class ValidationError(ScatterError, ValueError):
    """Invalid construction arguments or configuration."""


class DomainError(ScatterError, ValueError):
    """Argument outside the domain of an operation."""


class StabilityError(ScatterError):
    """Integration step too large for the local wave number."""


class MatchingError(ScatterError):
    """Phase shift could not be extracted at any match point."""


class ResolutionError(ScatterError):
    """Phase-shift sweep too coarse to follow delta(k) continuously."""


class PoleError(ScatterError):
    """Evaluation sits on a pole of cot(delta) or tan(delta)."""


class ThresholdError(ScatterError):
    """Parameters lie on a bound-state threshold (scattering length diverges).

    ``inv_a`` carries the inverse scattering length when it is known.
    """

    def __init__(self, message, inv_a=None):
        super().__init__(message)
        self.inv_a = inv_a


class NormalizationError(ScatterError):
    """Zero-energy solution cannot be normalized to 1 - x0/a."""


class ConsistencyError(ScatterError):
    """An internal invariant of a computed object failed."""


class GridError(ScatterError):
    """Grid too short for the requested quantity; extend x_max."""
