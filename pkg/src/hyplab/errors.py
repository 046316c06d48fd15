"""Exception hierarchy shared by every hyplab module."""


class HyplabError(Exception):
    pass


class DomainError(HyplabError, ValueError):
    """An argument lies outside the set where the operation is defined."""


class PoleError(DomainError):
    pass


class BoundaryError(DomainError):
    pass


class QuadratureError(HyplabError, RuntimeError):
    """Adaptive quadrature ran out of budget before reaching tolerance.

    The best value found so far is kept on ``partial`` together with its
    error estimate, so callers can decide whether it is usable.
    """

    def __init__(self, message, partial=float("nan"), error_estimate=float("inf")):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate


class DivergenceError(HyplabError, ArithmeticError):
    pass


class RangeError(HyplabError, ArithmeticError):
    """A computed point left the target domain, or a value overflowed."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class ConfigurationError(HyplabError, ValueError):
    pass


class ConstructionError(HyplabError, RuntimeError):
    pass


class FitError(HyplabError, ValueError):
    pass


class NotFoundError(HyplabError, LookupError):
    pass


class ConvergenceError(HyplabError, RuntimeError):
    def __init__(self, message, iterations=0, residual=float("inf")):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
