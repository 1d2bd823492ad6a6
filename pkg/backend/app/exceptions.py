# -*- coding: utf-8 -*-
"""
Error types raised by the numerical services.

All of them derive from a builtin exception class so callers that only know
about ``ValueError`` / ``ArithmeticError`` still catch them. The CLI and the
routers map each class to an exit status or HTTP status code.
"""


class DomainError(ValueError):
    """
    Raised when an argument lies outside the domain of an operation
    (a pole of the Gamma function, an order outside its admissible range,
    an evaluation point outside the interval, ...).
    """


class RangeError(OverflowError):
    """
    Raised when a result cannot be represented in double precision.
    """


class AccuracyError(ArithmeticError):
    """
    Raised when an approximation fails to reach its requested accuracy.

    Attributes
    ----------
    last_term : float or None
        Magnitude of the last series term or panel error seen before giving up.
    """

    def __init__(self, message: str, last_term: float = None):
        super().__init__(message)
        self.last_term = last_term


class BracketError(RuntimeError):
    """
    Raised when a bracket does not contain the expected number of sign changes.

    Attributes
    ----------
    bracket : object
        The bracket that was being refined.
    samples : list of tuple
        ``(lambda, value)`` pairs sampled inside the bracket.
    """

    def __init__(self, message: str, bracket=None, samples=None):
        super().__init__(message)
        self.bracket = bracket
        self.samples = list(samples or [])
