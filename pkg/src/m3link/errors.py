"""Exception types shared across modules."""


class M3LinkError(Exception):
    pass


class BoundExceeded(M3LinkError):
    """A brute-force or memory bound would be exceeded."""


class InvalidTag(M3LinkError, ValueError):
    """Unrecognised group tag."""

    def __str__(self):
        return f"invalid group tag {self.args[0]!r}" if self.args else "invalid group tag"


class MalformedGram(M3LinkError, ValueError):
    """Gram matrix is asymmetric or ill-defined on the group."""


class GroupMismatch(M3LinkError, ValueError):
    pass


class DegeneratePairing(M3LinkError, ValueError):
    pass


class GenerationFailure(M3LinkError):
    pass


class NoSolution(M3LinkError):
    """An integer system that theory says is solvable had no solution."""


class HorizonError(M3LinkError, ValueError):
    """Requested degree beyond the resolution's horizon."""


class UnsupportedVariant(M3LinkError):
    pass


class PositiveBettiNumber(M3LinkError, ValueError):
    pass


class HypothesisViolation(M3LinkError, ValueError):
    pass


class ContextMismatch(M3LinkError, ValueError):
    pass
