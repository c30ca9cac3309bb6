"""Exception hierarchy shared by every reasoner."""

from __future__ import annotations


class PkrError(Exception):
    """Base class for all pkrkit errors."""


class ParseError(PkrError):
    def __init__(self, message: str, line: int = 1, column: int = 1, source: str | None = None):
        self.reason = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}line {line}, column {column}: {message}")


class EvaluationError(PkrError):
    """An atom was evaluated that the interpretation's alphabet does not declare."""

    def __init__(self, atom: str):
        self.atom = atom
        super().__init__(f"unknown atom {atom!r}")


class CapacityError(PkrError):
    def __init__(self, cap: str, limit: int, requested: int):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(f"{cap} cap exceeded: {requested} > {limit}")


class PreconditionError(PkrError, ValueError):
    """Input violates the documented precondition of an operation."""


class CircuitError(PkrError):
    pass
