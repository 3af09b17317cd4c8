"""Exception hierarchy shared by every module."""


class LCError(Exception):
    """Base class for all errors raised by lcspheres."""


class InvalidComplex(LCError):
    pass


class DimensionError(LCError):
    pass


class NotPseudomanifold(LCError):
    pass


class FaceNotFound(LCError):
    pass


class VertexClash(LCError):
    pass


class UnsupportedDimension(LCError):
    pass


class InvalidSubcomplex(LCError):
    pass


class IllegalCollapse(LCError):
    pass


class InvalidKillingSequence(LCError):
    pass


class InvalidTree(LCError):
    pass


class InvalidGluing(LCError):
    pass


class InvalidInput(LCError):
    pass


class NotSimplicial(LCError):
    pass


class InternalInvariantViolation(LCError):
    pass


class NotFound(LCError):
    pass


class IllegalMove(LCError):
    """A local-construction move violates a legality rule.

    ``reason`` is one of ``not-boundary``, ``same-cell``, ``no-shared-face``,
    ``same-simplex``, ``adjacent-simplices``, ``degenerate``, ``phase``.
    """

    def __init__(self, reason, message=""):
        self.reason = reason
        super().__init__(f"{reason}: {message}" if message else reason)


class ParseError(LCError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
