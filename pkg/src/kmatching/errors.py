"""Exception hierarchy shared by every module."""

from __future__ import annotations


class KMatchingError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRange(KMatchingError, ValueError):
    def __init__(self, edge, m, n):
        self.edge = edge
        super().__init__(f"edge {edge} out of range for a {m}x{n} graph")


class InvalidMatching(KMatchingError, ValueError):
    pass


class DimensionMismatch(KMatchingError, ValueError):
    def __init__(self, got, expected):
        self.got = got
        self.expected = expected
        super().__init__(f"point has shape {got}, expected {expected}")


class SupportOutsideGraph(KMatchingError, ValueError):
    def __init__(self, i, j):
        self.i = i
        self.j = j
        super().__init__(f"nonzero entry at ({i}, {j}) which is not an edge of the graph")


class NoSuchMatching(KMatchingError):
    """No matching with the requested size and coverage exists.

    ``violator`` carries a :class:`~kmatching.matching.HallViolator` when the
    failure is a Hall obstruction on a one-sided request, otherwise ``None``.
    """

    def __init__(self, message, violator=None):
        self.violator = violator
        super().__init__(message)


class PreconditionViolated(KMatchingError, ValueError):
    def __init__(self, condition):
        self.condition = condition
        super().__init__(condition)


class NotAMember(KMatchingError, ValueError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"point is not a member: {violation}")


class AlreadyIntegral(KMatchingError, ValueError):
    pass


class NotInDilatedBirkhoff(KMatchingError, ValueError):
    def __init__(self, kind, index, value, t):
        self.kind = kind
        self.index = index
        self.value = value
        self.t = t
        super().__init__(f"{kind} {index} sums to {value}, expected exactly {t}")


class NotInDilatedPolytope(KMatchingError, ValueError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"point is outside the dilated polytope: {violation}")


class TooLarge(KMatchingError, ValueError):
    pass


class NoKMatching(KMatchingError, ValueError):
    pass


class InternalError(KMatchingError, AssertionError):
    """A constructive step produced output violating its own postcondition."""
