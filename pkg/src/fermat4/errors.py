"""Exception hierarchy shared by all modules."""


class Fermat4Error(Exception):
    """Base class for every error raised by the package."""


# fields
class NonMonicMinpoly(Fermat4Error, ValueError):
    pass


class CompositeModulus(Fermat4Error, ValueError):
    pass


class DivisionByZero(Fermat4Error, ZeroDivisionError):
    pass


class ZeroDivisorEncountered(Fermat4Error, ArithmeticError):
    """A nonzero element turned out not to be invertible (reducible minpoly)."""


class OwnerMismatch(Fermat4Error, ValueError):
    pass


class NotARoot(Fermat4Error, ValueError):
    pass


class ActionMismatch(Fermat4Error, ValueError):
    pass


class MissingDistinguishedElement(Fermat4Error, KeyError):
    pass


# curve geometry
class InfiniteField(Fermat4Error, ValueError):
    pass


class AllZeroCoordinates(Fermat4Error, ValueError):
    pass


class NotOnCurve(Fermat4Error, ValueError):
    pass


class SingularPoint(Fermat4Error, ValueError):
    pass


class ChartFailure(Fermat4Error, ValueError):
    pass


class PrecisionExhausted(Fermat4Error, ArithmeticError):
    pass


class OrderMismatch(Fermat4Error, ValueError):
    pass


# divisors / Riemann-Roch
class CurveMismatch(Fermat4Error, ValueError):
    pass


class RegistryGap(Fermat4Error, LookupError):
    pass


class H0Overflow(Fermat4Error, ArithmeticError):
    """A degree-2 class reported h0 >= 2, impossible on a non-hyperelliptic curve."""


# torsion
class NotFound(Fermat4Error, LookupError):
    pass


# Z/4 linear algebra
class DimensionMismatch(Fermat4Error, ValueError):
    pass


class NoSolution(Fermat4Error, ValueError):
    pass


class ClosureCapExceeded(Fermat4Error, RuntimeError):
    pass


class NonInvertibleGenerator(Fermat4Error, ValueError):
    pass


class NotSimilitude(Fermat4Error, ValueError):
    pass


# pairing / census
class NotAFourthRoot(Fermat4Error, ValueError):
    pass


class PairingFailure(Fermat4Error, ValueError):
    pass


class DegenerateSample(Fermat4Error, ValueError):
    pass


class CorruptCache(Fermat4Error, ValueError):
    pass
