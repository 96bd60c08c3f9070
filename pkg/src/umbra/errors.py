"""Exception hierarchy shared by every umbra module."""


class UmbraError(Exception):
    """Base class for all errors raised by umbra."""


class PoleError(UmbraError, ZeroDivisionError):
    """A factor or gamma argument hit a pole.

    ``index`` identifies the offending factor or step when one exists.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DomainError(UmbraError, ValueError):
    """An argument lies outside the supported domain."""


class BranchCutError(DomainError):
    """A non-integer power was requested of a base on the negative real axis."""


class ModeError(UmbraError, ValueError):
    """Exact arithmetic was requested for a computation that cannot be exact."""


class DegenerateParameterError(UmbraError, ValueError):
    """Parameters hit a logarithmic case that is deliberately not implemented."""


class InsufficientSamplesError(UmbraError, ValueError):
    """A grid function is too short for the requested operator."""


class ConvergenceError(UmbraError, ArithmeticError):
    """A series or iteration did not meet its tolerance within the term cap."""

    def __init__(self, message, terms=None, estimate=None):
        super().__init__(message)
        self.terms = terms
        self.estimate = estimate


class QuadratureError(ConvergenceError):
    """Adaptive quadrature exhausted its budget; ``estimate`` holds the error bound."""
