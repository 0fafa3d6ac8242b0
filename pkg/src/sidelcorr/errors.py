"""Exception hierarchy.

Every domain error carries a short machine-readable ``code`` (the class name),
which the CLI prints verbatim and maps to exit status 2.
"""

from __future__ import annotations


class SidelcorrError(ValueError):
    @property
    def code(self) -> str:
        return type(self).__name__


class InvalidArgument(SidelcorrError):
    pass


# finite fields
class NotPrime(SidelcorrError):
    pass


class EvenPrime(SidelcorrError):
    pass


class ReducibleModulus(SidelcorrError):
    pass


class NotPrimitive(SidelcorrError):
    pass


class DivisionByZero(SidelcorrError, ZeroDivisionError):
    pass


# cyclotomic integers
class LevelMismatch(SidelcorrError):
    pass


class NotAMultiple(SidelcorrError):
    pass


# sequences / correlation
class ModulusDoesNotDivide(SidelcorrError):
    pass


class PeriodMismatch(SidelcorrError):
    pass


class ShapeMismatch(SidelcorrError):
    pass


class DegenerateFamily(SidelcorrError):
    pass


class BadMultiplier(SidelcorrError):
    pass


class BadTau(SidelcorrError):
    pass


# character sums
class TrivialCharacter(SidelcorrError):
    pass


class NotCoprime(SidelcorrError):
    pass


class NotSemiprimitive(SidelcorrError):
    pass


class DegreeNotCompatible(SidelcorrError):
    pass


class ConjugatePair(SidelcorrError):
    pass


class PreconditionUnmet(SidelcorrError):
    pass


# cyclotomy
class BadClassIndex(SidelcorrError):
    pass


class NonIntegralCount(SidelcorrError):
    pass
