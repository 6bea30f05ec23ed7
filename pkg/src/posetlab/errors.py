"""Exception hierarchy shared by every posetlab module."""


class PosetLabError(ValueError):
    """Base class for all input and contract errors raised by posetlab."""


# core
class CycleDetected(PosetLabError):
    pass


class IndexOutOfRange(PosetLabError):
    pass


class NotTransitive(PosetLabError):
    pass


class PatternTooLarge(PosetLabError):
    pass


class ArityMismatch(PosetLabError):
    pass


class EmptyBlock(PosetLabError):
    pass


class SizeMismatch(PosetLabError):
    pass


class SearchBoundExceeded(PosetLabError):
    pass


class TooLarge(PosetLabError):
    pass


# recognition
class NotIntervalOrder(PosetLabError):
    pass


class NotSemiorder(PosetLabError):
    pass


class RouteDisagreement(AssertionError):
    """Two independent recognition routes returned different verdicts."""


# ordinal
class OrdinalSyntaxError(PosetLabError):
    pass


# structure
class BoundaryTooLarge(PosetLabError):
    pass


class LevelInfinite(PosetLabError):
    pass


class TooLargeForExhaustive(PosetLabError):
    pass


class TowerTooTall(PosetLabError):
    pass


# omega
class MalformedPresentation(PosetLabError):
    pass


class NotStrictOrder(PosetLabError):
    pass


class NotPureWitness(PosetLabError):
    pass


class ContainmentViolated(PosetLabError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


# symdyn
class NotProlongable(PosetLabError):
    pass


class PrefixTooShort(PosetLabError):
    pass


class NotFactorClosed(PosetLabError):
    pass


class MarginTooSmall(PosetLabError):
    pass
