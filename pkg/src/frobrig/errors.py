"""Exception hierarchy.

Every error raised on purpose derives from :class:`FrobrigError`, so callers
(and the command line front end) can catch the whole family at once.
"""


class FrobrigError(Exception):
    """Base class for all library errors."""


# field construction and arithmetic
class NotPrime(FrobrigError, ValueError):
    pass


class ReducibleModulus(FrobrigError, ValueError):
    pass


class DegreeMismatch(FrobrigError, ValueError):
    pass


class DivideByZero(FrobrigError, ZeroDivisionError):
    pass


class CtxMismatch(FrobrigError, TypeError):
    pass


class BudgetExceeded(FrobrigError, RuntimeError):
    """An exhaustive enumeration would exceed the configured element budget."""


# polynomials
class NegativeExponentInOuter(FrobrigError, ValueError):
    pass


class ZeroAtPole(FrobrigError, ZeroDivisionError):
    pass


class ConstantInput(FrobrigError, ValueError):
    pass


class ZeroPolynomial(FrobrigError, ValueError):
    pass


class ExponentCapExceeded(FrobrigError, OverflowError):
    pass


# Artin-Schreier
class ZeroParameter(FrobrigError, ValueError):
    pass


# Laurent series
class DivideByZeroSeries(FrobrigError, ZeroDivisionError):
    pass


class PrecisionExhausted(FrobrigError, ArithmeticError):
    """The truncation window is too small to certify the requested quantity."""


# maps and counting
class ConstantMap(FrobrigError, ValueError):
    pass


class InseparableMap(FrobrigError, ValueError):
    pass


class DegenerateGraph(FrobrigError, ValueError):
    """The twisted graph equation vanishes identically (the maps agree up to Frobenius)."""


class InconsistencyDetected(FrobrigError, AssertionError):
    """Two checkers disagree on something the theory forces. Always a bug."""


# parsing / CLI
class ParseError(FrobrigError, ValueError):
    pass


class CoefficientOutOfField(FrobrigError, ValueError):
    pass


class UsageError(FrobrigError, ValueError):
    pass
