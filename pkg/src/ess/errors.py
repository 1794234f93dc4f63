"""Exception types raised by the ess package."""


class EssError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(EssError, ValueError):
    """An argument lies outside the domain of the operation."""


class NormalizationError(EssError, ValueError):
    """Probabilities do not sum to one within tolerance."""


class ConditioningError(EssError, ValueError):
    """Conditioning on an event of probability zero."""


class UnsupportedFamily(EssError, TypeError):
    """No closed form is available for the given density."""


class QuadratureError(EssError, ArithmeticError):
    """Numerical integration failed to reach the requested tolerance."""


class ParseError(EssError, ValueError):
    """Input text could not be parsed."""
