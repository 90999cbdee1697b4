"""Exception hierarchy shared by every module."""


class TriChannelError(Exception):
    """Base class for all errors raised by this package."""


# triangulation-core
class InconsistentRotation(TriChannelError):
    pass


class NotTriangulated(TriChannelError):
    pass


class NotPlanarSphere(TriChannelError):
    pass


class InvalidSize(TriChannelError):
    pass


class DegreeTooHigh(TriChannelError):
    pass


class UnknownName(TriChannelError):
    pass


class ParseError(TriChannelError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# coloring-algebra
class ImproperColoring(TriChannelError):
    pass


class InconsistentColoring(TriChannelError):
    pass


# parity
class NotATrail(TriChannelError):
    pass


class NotClosed(TriChannelError):
    pass


class ParityViolation(TriChannelError):
    def __init__(self, vector, trail=None):
        self.vector = vector
        self.trail = trail
        super().__init__(f"closed trail has mixed parities {vector.label()}")


class NotAdjacent(TriChannelError):
    pass


class WouldRepeatEdge(TriChannelError):
    pass


class BoundaryVertex(TriChannelError):
    pass


# channels-knobs
class WrongStartColor(TriChannelError):
    pass


class StaleChannel(TriChannelError):
    pass


class StaleKnob(TriChannelError):
    pass


# reduction
class BadHoleSize(TriChannelError):
    pass


class ReductionFailed(TriChannelError):
    pass


class NoFreeColor(TriChannelError):
    pass


class DepthLimit(TriChannelError):
    def __init__(self, message, depth=None, visited=None):
        self.depth = depth
        self.visited = visited
        super().__init__(message)


# oracle
class CapExceeded(TriChannelError):
    pass


# harness
class ScenarioPreconditionFailed(TriChannelError):
    pass
