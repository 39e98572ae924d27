"""
Exceptions and warnings raised by uc_radius
"""


class DomainError(ValueError):
    """
    A parameter lies outside the domain where the quantity is defined
    """


class NumericalError(RuntimeError):
    """
    A computation could not reach its certified accuracy
    """


class NonConvergenceError(NumericalError):
    """
    A series did not meet its truncation rule within the allowed terms
    """


class ScanExhaustedError(NumericalError):
    """
    The zero scanner reached its upper bound before finding enough zeros
    """


class CriticalPointError(NumericalError):
    """
    A ratio was evaluated too close to a zero of its denominator
    """


class BracketError(NumericalError):
    """
    A root finder was handed an interval without a sign change
    """


class SlowConvergenceWarning(UserWarning):
    """
    q is so close to 1 that the infinite products converge slowly
    """
