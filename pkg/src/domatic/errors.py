"""Exception types raised across the package."""


class DomaticError(Exception):
    """Base class for all package errors."""


class ParseError(DomaticError):
    pass


class SelfLoop(DomaticError):
    pass


class DuplicateEdge(DomaticError):
    pass


class InvalidVertex(DomaticError):
    pass


class InvalidOffset(DomaticError):
    pass


class GenerationFailed(DomaticError):
    pass


class TooLarge(DomaticError):
    pass


class IsolatedVertex(DomaticError):
    pass


class NoFeasibleT(DomaticError):
    pass


class InvalidEpsilon(DomaticError):
    pass


class TooFewColors(DomaticError):
    pass


class NotFound(DomaticError):
    pass


class CyclesNotDisjoint(DomaticError):
    pass


class CapExceeded(DomaticError):
    """A resampling run hit its cap. The diagnostic report is attached."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
