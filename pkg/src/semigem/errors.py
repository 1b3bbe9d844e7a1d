"""Exception hierarchy shared by all modules."""
from __future__ import annotations



class GemError(ValueError):
    """Base class for invalid gems and invalid requests on them."""


class OddVertexCount(GemError):
    pass


class FixedPoint(GemError):
    pass


class NotInvolution(GemError):
    line = None


class VertexOutOfRange(GemError):
    pass


class MissingColor(GemError):
    pass


class SameColor(GemError):
    pass


class EmptyColorSet(GemError):
    pass


class SingletonColorSet(GemError):
    pass


class Disconnected(GemError):
    pass


class PermutationColorMismatch(GemError):
    pass


class WrongRank(GemError):
    pass


class NonNegativeChi(GemError):
    """Type enumeration only handles surfaces with negative Euler characteristic."""


class VertexBoundExceeded(GemError):
    pass


class ParseError(GemError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column
