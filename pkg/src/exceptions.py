"""Exceptions raised by the algebra layers."""
from typing import Optional


class IntegralityViolation(ArithmeticError):
    """A coefficient that must lie in the integral form has a pole at q̃.

    Raised when a divided-power structure constant or coordinate, computed over
    ℚ(q), has a denominator divisible by the cyclotomic polynomial of the
    chosen root of unity.
    """


class AssumptionViolation(ValueError):
    """A Frobenius-type computation was requested outside its admitted range.

    Attributes:
        report: The validation report listing the violated assumptions.
    """

    def __init__(self, message: str, report: Optional[object] = None):
        super().__init__(message)
        self.report = report
