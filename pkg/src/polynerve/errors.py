"""Exception hierarchy for polynerve."""


class PolynerveError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPolytope(PolynerveError, ValueError):
    """Incidence data does not describe an abstract convex polytope."""


class DuplicateRowOrColumn(InvalidPolytope):
    pass


class NotGraded(InvalidPolytope):
    pass


class RankMismatch(InvalidPolytope):
    pass


class SizeOutOfRange(PolynerveError, ValueError):
    pass


class UnknownFace(PolynerveError, KeyError):
    pass


class DimensionOutOfRange(PolynerveError, ValueError):
    pass


class NotASimplex(PolynerveError, ValueError):
    pass


class NotGradedFacePoset(PolynerveError, ValueError):
    pass


class CapExceeded(PolynerveError, ValueError):
    pass


class InvalidLattice(PolynerveError, ValueError):
    pass


class TimeBudgetExceeded(PolynerveError):
    """A search ran out of time; ``best`` holds the best result found so far."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ExprSyntaxError(PolynerveError, SyntaxError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class UnknownConstructor(PolynerveError, ValueError):
    pass


class ArityError(PolynerveError, TypeError):
    pass
