"""Exception hierarchy shared by every module."""


class LatticeLoomError(Exception):
    pass


class CycleError(LatticeLoomError, ValueError):
    """A relation list would force ``x < x`` for some element."""


class NotComparable(LatticeLoomError, ValueError):
    pass


class NoComparablePair(LatticeLoomError, ValueError):
    pass


class EmptyInput(LatticeLoomError, ValueError):
    pass


class Unbounded(LatticeLoomError, ValueError):
    pass


class SizeLimit(LatticeLoomError, RuntimeError):
    """Ideal enumeration exceeded the configured cap."""


class NoArcs(LatticeLoomError, ValueError):
    pass


class MissingArc(LatticeLoomError, KeyError):
    pass


class NotConnected(LatticeLoomError, ValueError):
    pass


class NotGraded(LatticeLoomError, ValueError):
    pass


class MissingLevels(LatticeLoomError, ValueError):
    pass


class BadParams(LatticeLoomError, ValueError):
    pass


class NonPrimeField(BadParams):
    pass


class NotOneArcTransitive(LatticeLoomError, ValueError):
    pass


class ParseError(LatticeLoomError, ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ValidationError(LatticeLoomError, ValueError):
    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
