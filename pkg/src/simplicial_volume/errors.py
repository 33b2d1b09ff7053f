"""Exception types shared across the package."""


class SimplicialVolumeError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateSimplex(SimplicialVolumeError, ValueError):
    """A vertex tuple repeats a vertex."""


class DimensionMismatch(SimplicialVolumeError, ValueError):
    pass


class NotAdmissible(SimplicialVolumeError):
    """The facet chain has a nonzero boundary.

    ``offending`` maps each (d-1)-simplex with a nonzero residual to that
    residual coefficient.
    """

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = dict(offending or {})


class WarmStartRejected(SimplicialVolumeError):
    """The floating-point basis could not be used by the exact phase."""


class Infeasible(SimplicialVolumeError):
    pass


class NoFractionalVariable(SimplicialVolumeError, ValueError):
    pass


class TimeLimitReached(SimplicialVolumeError):
    """Raised when a deadline passes; carries the best verified bounds."""

    def __init__(self, message, lower_bound=None, upper_bound=None, stats=None):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.stats = dict(stats or {})


class PeelFailure(SimplicialVolumeError):
    """No candidate simplex lowers the rounded-up fractional volume by one."""

    def __init__(self, message, residual=None, steps=0, partial=()):
        super().__init__(message)
        self.residual = residual
        self.steps = steps
        self.partial = list(partial)


class OrientationClash(SimplicialVolumeError):
    """Glued facets do not cancel after vertex identification."""


class ParseError(SimplicialVolumeError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.column = column
        self.source = source


class BadLabel(ParseError):
    pass


class AsymmetricAdjacency(ParseError):
    pass


class WrongGroupCount(ParseError):
    pass


class NonTriangularFace(SimplicialVolumeError):
    pass


class TraceInconsistent(SimplicialVolumeError):
    pass


class BoundsTooLarge(SimplicialVolumeError, ValueError):
    pass


class BudgetExhausted(SimplicialVolumeError):
    """The search budget ran out; ``partial`` holds the gaps found so far."""

    def __init__(self, message, partial=(), processed=0):
        super().__init__(message)
        self.partial = list(partial)
        self.processed = processed
