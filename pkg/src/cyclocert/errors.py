"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CycloCertError(Exception):
    pass


class NotDivisible(CycloCertError, ArithmeticError):
    """An exact division was requested but the divisor does not divide."""


class ZeroPolynomial(CycloCertError, ValueError):
    pass


class DivisionByZeroPoly(CycloCertError, ZeroDivisionError):
    pass


class ModulusMismatch(CycloCertError, ValueError):
    pass


class BothZero(CycloCertError, ValueError):
    pass


class AllZero(CycloCertError, ValueError):
    pass


class InvalidDivisor(CycloCertError, ValueError):
    pass


class NotAPrime(CycloCertError, ValueError):
    pass


class ModulusTooLarge(CycloCertError, ValueError):
    pass


class IndexOutOfRange(CycloCertError, ValueError):
    pass


class NotADivisor(CycloCertError, ValueError):
    pass


class NotSquarefree(CycloCertError, ValueError):
    def __init__(self, n: int):
        super().__init__(f"{n} is not squarefree")
        self.n = n


class PreconditionViolated(CycloCertError, ValueError):
    pass


class EmptyInput(CycloCertError, ValueError):
    pass


class CannotFactor(CycloCertError):
    def __init__(self, n: int):
        super().__init__(f"could not factor {n} within the time budget")
        self.n = n


class TheoremViolation(CycloCertError):
    """A theorem generator family produced a non-unit witness."""

    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness
