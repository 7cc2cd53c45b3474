"""Exception types raised across the package.

Every error derives from :class:`GrajacError` (itself a ``ValueError``) so
callers can catch the whole family at once; the CLI maps them to exit code 2.
"""


class GrajacError(ValueError):
    pass


# graph construction
class LoopArc(GrajacError):
    pass


class VertexOutOfRange(GrajacError):
    pass


class ZeroMultiplicity(GrajacError):
    pass


class LastVertex(GrajacError):
    pass


class GraphFormatError(GrajacError):
    pass


# linear algebra
class NotSquare(GrajacError):
    pass


class SingularMatrix(GrajacError):
    pass


class MinorEnumerationTooLarge(GrajacError):
    pass


class MatrixFormatError(GrajacError):
    pass


# abelian groups
class DivisorBelowTwo(GrajacError):
    pass


# graph analysis
class CycleShapeRequired(GrajacError):
    pass


class NotUndirected(GrajacError):
    pass


class Disconnected(GrajacError):
    pass


class NotATree(GrajacError):
    pass


# generators
class WordTooShort(GrajacError):
    pass


class NotASinkVertex(GrajacError):
    pass


class DegreeMismatch(GrajacError):
    pass


class InfeasibleParameters(GrajacError):
    pass


class WheelTooSmall(GrajacError):
    pass


class EmptyLayer(GrajacError):
    pass


# chip-firing and sweeps
class LengthMismatch(GrajacError):
    pass


class UnknownFamily(GrajacError):
    pass
