"""Exception types shared across the package."""

from __future__ import annotations


class TriodError(Exception):
    """Base class for all package errors."""


class InvalidPattern(TriodError):
    """Placement data does not describe a single cycle on the triod."""


class ParseError(TriodError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CenterPoint(TriodError):
    """Displacement requested for the branching point."""


class NoInnerRing(TriodError):
    """The rank-1 points do not map around the three branches cyclically."""


class OutsideHull(TriodError):
    """Evaluation requested outside the convex hull of the pattern."""


class NoCycle(TriodError):
    """Graph has no directed cycle."""


class BudgetExceeded(TriodError):
    """A configurable search cap was hit; results are truncated."""


class BadRho(TriodError):
    """No unimodal twist family exists for the requested rotation number."""


class NotATwist(TriodError):
    """Operation requires a triod-rot-twist pattern."""
