"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`PosetPolyError`;
the CLI maps these to exit status 1 and :class:`MalformedInput` to exit 2.
"""


class PosetPolyError(Exception):
    """Base class for domain errors."""

    @property
    def reason(self) -> str:
        return type(self).__name__


class MalformedInput(PosetPolyError):
    pass


# poset_core
class CycleDetected(PosetPolyError):
    pass


class UnknownLabel(PosetPolyError):
    pass


class IndexOutOfRange(PosetPolyError, IndexError):
    pass


# polytope
class BruteSizeExceeded(PosetPolyError):
    pass


class NoExcess(PosetPolyError):
    pass


class SearchExhausted(PosetPolyError):
    """Unit strip found no element; unreachable unless the oracle is wrong."""


class NotInSm0(PosetPolyError):
    pass


class NotMember(PosetPolyError):
    pass


class HypothesisFails(PosetPolyError):
    pass


# grassmann / geometry
class BadParams(PosetPolyError, ValueError):
    pass


class NonIntegerResult(PosetPolyError):
    pass


class TooLarge(PosetPolyError):
    pass


class RankDeficient(PosetPolyError):
    pass


class GeometryCheckFailed(PosetPolyError):
    pass


# rep
class MalformedVector(PosetPolyError):
    pass


class CapExceeded(PosetPolyError):
    pass


class RelationViolated(PosetPolyError):
    pass
