"""Exception hierarchy shared by every module.

Anything deriving from :class:`RwsatError` is a *domain* error: the inputs were
well-formed but violate a precondition of the requested operation. The CLI
maps these to exit status 1.
"""


class RwsatError(Exception):
    """Base class for domain errors."""


class PreconditionError(RwsatError, ValueError):
    """An operation was called outside the regime where it is defined."""


class SizeExceededError(PreconditionError):
    def __init__(self, n, bound, message=None):
        self.n = n
        self.bound = bound
        super().__init__(message or f"graph on {n} vertices exceeds the small-graph bound {bound}")


class BudgetExceededError(RwsatError):
    """An exhaustive search ran out of its configured budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Graph6Error(RwsatError, ValueError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class MalformedCertificateError(RwsatError, ValueError):
    pass


class NoIndependentSetError(PreconditionError):
    pass


class ColorCollisionError(PreconditionError):
    pass
