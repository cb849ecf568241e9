"""Exception types raised across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of a function."""


class ValidationError(ValueError):
    """Invalid configuration or parameter combination."""


class TruncationError(IndexError):
    """Requested index lies beyond a sequence's truncation horizon."""


class RootCountError(RuntimeError):
    """Root refinement did not produce the expected number of roots."""


class QuadratureError(RuntimeError):
    """A quadrature routine failed to reach its tolerance."""
