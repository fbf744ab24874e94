"""Exception types shared across the package."""

from __future__ import annotations


class InstanceParseError(ValueError):
    """Raised when an instance file is malformed.

    Carries the 1-based line number of the offending record when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotAModuleError(ValueError):
    """Raised when a vertex set claimed to be a module is not one."""


class ClassViolationError(RuntimeError):
    """Raised when an operation requires a (P5, co-P5)-free graph and the
    input provably is not one."""


class StrongStableSetError(ClassViolationError):
    """Raised when no stable set meets every maximal clique.

    Such a set exists in every strongly perfect graph, so exhausting the
    search certifies the input is outside the supported class.
    """


class MergePreconditionError(ValueError):
    """Raised when the coloring-merge precondition fails: the classes
    covering the marker vertex carry less total multiplicity than the
    module coloring being merged in."""


class OracleBudgetError(RuntimeError):
    """Raised when an input is too large for the exact brute-force oracle."""


class InvariantError(RuntimeError):
    """Internal consistency failure; indicates a bug, never bad input."""
