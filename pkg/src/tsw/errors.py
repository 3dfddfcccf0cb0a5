"""Exception types shared across the package."""


class TSWError(Exception):
    """Base class for all errors raised by tsw."""


class GenusMismatch(TSWError):
    pass


class MalformedRotation(TSWError):
    pass


class WalkNotClosed(TSWError):
    pass


class NotACycle(TSWError):
    pass


class NotTriangulation(TSWError):
    pass


class NotThreeOrientation(TSWError):
    pass


class TooLarge(TSWError):
    pass


class FaceNotDirected(TSWError):
    pass


class NotEdgeLabeling(TSWError):
    pass


class NotSchnyderOrientation(TSWError):
    pass


class NotHalfCrossing(TSWError):
    pass


class NotIntersecting(TSWError):
    pass


class NoneFound(TSWError):
    pass


class WouldCreateForbidden(TSWError):
    pass


class NoApplicableRule(TSWError):
    pass


class NonTermination(TSWError):
    pass


class NoAdmissibleTriple(TSWError):
    pass


class StemWrapsRoot(TSWError):
    pass


class MalformedWord(TSWError):
    pass


class DanglingLocator(TSWError):
    pass


class DegeneratePeriods(TSWError):
    pass


class FormatError(TSWError):
    pass
