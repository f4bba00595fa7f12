#!/usr/bin/env python3
# coding=utf-8

"""
Exceptions raised by the entanglement light-cone laboratory.

Every concrete error also derives from the builtin a caller would naturally catch, so code that only knows
about ``ValueError`` or ``AssertionError`` keeps working.
"""

from collections.abc import Mapping
from typing import Any


class EntconeError(Exception):
    """
    Base class for all errors raised by this package.
    """

    pass


class DomainError(EntconeError, ValueError):
    """
    An argument lies outside the domain of the operation.

    >>> raise DomainError("region must be nonempty.")
    Traceback (most recent call last):
    vt.quantum.entcone.errors.DomainError: region must be nonempty.

    >>> assert isinstance(DomainError("x"), ValueError)
    """

    pass


class NumericalError(EntconeError, ArithmeticError):
    """
    A computation produced a non-finite or otherwise unusable number.
    """

    def __init__(self, message: str, *, at: Any = None):
        """
        :param message: error description.
        :param at: the offending point, e.g. the complex momentum at which a band function blew up.
        """
        super().__init__(message)
        self.at = at


class ConditionsViolatedError(EntconeError):
    """
    The coupling violates the relative-boundedness conditions on ``I``.

    >>> err = ConditionsViolatedError(1.2, 0.4)
    >>> err.alpha4, err.alpha5
    (1.2, 0.4)
    >>> str(err)
    'conditions-violated: alpha4=1.2 alpha5=0.4 (both must be < 1)'
    """

    def __init__(self, alpha4: float, alpha5: float):
        super().__init__(
            f"conditions-violated: alpha4={alpha4:.6g} alpha5={alpha5:.6g} (both must be < 1)"
        )
        self.alpha4 = alpha4
        self.alpha5 = alpha5


class LemmaCheckError(EntconeError, AssertionError):
    """
    A numerical check of an operator inequality failed.
    """

    def __init__(self, message: str, values: Mapping[str, float]):
        """
        :param message: which inequality failed.
        :param values: the observed quantity and its bound, keyed by name.
        """
        rendered = ", ".join(f"{k}={v:.6g}" for k, v in values.items())
        super().__init__(f"{message} ({rendered})")
        self.values = dict(values)


class InsufficientSamplesError(DomainError):
    """
    Too few samples survived the exclusion rules for a fit.
    """

    pass


class DegenerateDesignError(DomainError):
    """
    The fit design matrix is singular because one axis carries a single value.

    >>> DegenerateDesignError("t").axis
    't'
    """

    def __init__(self, axis: str):
        super().__init__(f"degenerate design matrix: samples span a single {axis} value.")
        self.axis = axis


class ConfigError(EntconeError, ValueError):
    """
    A scenario configuration is invalid.
    """

    pass


class ProvenanceError(EntconeError):
    """
    Records from different configurations were combined.
    """

    pass
