"""Exception hierarchy shared by all modules."""


class BisectorLabError(ValueError):
    """Base class for every error raised by this package."""


class NotPrime(BisectorLabError):
    pass


class NotOdd(BisectorLabError):
    pass


class UnsupportedModulus(BisectorLabError):
    """Prime outside the supported range p < 2**31."""


class ZeroInverse(BisectorLabError, ZeroDivisionError):
    pass


class IsotropicOrEqualPair(BisectorLabError):
    """The bisector of a and b is undefined because ||a - b|| = 0."""


class ModulusMismatch(BisectorLabError):
    pass


class Mod4Mismatch(BisectorLabError):
    """A check that needs p = 3 (mod 4) was given another prime."""


class EmptyInput(BisectorLabError):
    pass


class EmptySet(BisectorLabError):
    pass


class UnsolvableTerm(BisectorLabError):
    pass


class SizeTooLarge(BisectorLabError):
    pass


class TooLarge(BisectorLabError):
    pass


class ParseError(BisectorLabError):
    pass
