"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class GarsideError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GarsideError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnknownAtom(ParseError):
    def __init__(self, name: str, line: int | None = None, column: int | None = None):
        self.name = name
        super().__init__(f"unknown atom {name!r}", line, column)


class DuplicateAtom(ParseError):
    def __init__(self, name: str, line: int | None = None, column: int | None = None):
        self.name = name
        super().__init__(f"duplicate atom {name!r}", line, column)


class BudgetExceeded(GarsideError):
    """A step, length or class-count budget was exhausted."""

    def __init__(self, message: str, trace=None):
        self.trace = trace
        super().__init__(message)


class OutOfRange(GarsideError):
    pass


class NonHomogeneous(GarsideError):
    pass


class AmbiguousLcm(GarsideError):
    def __init__(self, message: str, candidates=()):
        self.candidates = tuple(candidates)
        super().__init__(message)


class AmbiguousGcd(GarsideError):
    def __init__(self, message: str, candidates=()):
        self.candidates = tuple(candidates)
        super().__init__(message)


class AmbiguousPair(GarsideError):
    def __init__(self, x: int, y: int, relations: tuple[int, ...]):
        self.x, self.y, self.relations = x, y, relations
        super().__init__(f"atoms ({x},{y}) are closed by several relations {list(relations)}")


class Stuck(GarsideError):
    """Reversing met a pair of atoms with no closing relation."""

    def __init__(self, x: int, y: int, trace=None, names: tuple[str, ...] | None = None):
        self.x, self.y, self.trace = x, y, trace
        if names is not None:
            label = f"({names[x]},{names[y]})"
        else:
            label = f"({x},{y})"
        super().__init__(f"stuck at {label}")


class CubeUnverified(GarsideError):
    pass


class NotASolution(GarsideError):
    pass


class ShapeMismatch(GarsideError):
    pass


class ExtractionConflict(GarsideError):
    pass


class InconsistentRetract(GarsideError):
    pass
