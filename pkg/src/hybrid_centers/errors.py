"""Exception types raised by the analysis routines."""


class HybridError(Exception):
    """Base class for every error raised by this package."""


class InvalidSystem(HybridError, ValueError):
    """A center, reset polynomial or system violates its invariants."""


class SideMismatch(HybridError):
    """The field at a point of the switching line does not enter the requested side."""


class DegenerateReset(HybridError):
    """The reset composed with the chord map is constant on the fold."""


class BoundaryPoint(HybridError):
    """A point of the switching line where branch membership is ambiguous.

    ``values`` maps each adjacent branch id to the value that branch would
    give at ``y``; callers pick the semantics they need.
    """

    def __init__(self, y, values=None):
        self.y = y
        self.values = dict(values or {})
        super().__init__(f"y={y!r} is a branch boundary point (adjacent values {self.values})")


class WrongDegree(HybridError):
    pass


class WrongRegime(HybridError):
    pass


class DegreeOverflow(HybridError):
    pass


class OutOfDomain(HybridError, ValueError):
    pass


class InsufficientPrecision(HybridError):
    pass


class EquilibriumReached(HybridError):
    """The state sits on an equilibrium lying on the switching line."""

    def __init__(self, y, side):
        self.y = y
        self.side = side
        super().__init__(f"equilibrium of side {side} on the switching line at y={y!r}")


class SpecError(HybridError):
    """A system specification document could not be parsed or validated."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
