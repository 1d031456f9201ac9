"""
Exception hierarchy for pathhom.
Every error raised by the library derives from PathHomologyError.
"""

from typing import Any, Optional


class PathHomologyError(Exception):
    """Base class for all pathhom errors."""


# =============================================================================
# INPUT
# =============================================================================

class DigraphParseError(PathHomologyError):
    """Edge-list text could not be turned into a digraph."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class LoopArrow(DigraphParseError):
    def __init__(self, vertex: str, line_number: Optional[int] = None):
        self.vertex = vertex
        super().__init__(f"loop arrow {vertex} -> {vertex} is not allowed", line_number)


class DuplicateArrow(DigraphParseError):
    def __init__(self, source: str, target: str, line_number: Optional[int] = None):
        self.source = source
        self.target = target
        super().__init__(f"duplicate arrow {source} -> {target}", line_number)


class EdgeListSyntaxError(DigraphParseError):
    def __init__(self, line: str, line_number: Optional[int] = None):
        self.line = line
        super().__init__(f"expected 'SRC DST', got {line!r}", line_number)


class UnknownVertex(PathHomologyError):
    def __init__(self, vertex: Any):
        self.vertex = vertex
        super().__init__(f"unknown vertex: {vertex!r}")


class UnknownFixture(PathHomologyError):
    def __init__(self, name: str, known: Optional[list] = None):
        self.name = name
        hint = f" (known: {', '.join(known)})" if known else ""
        super().__init__(f"unknown fixture: {name!r}{hint}")


# =============================================================================
# ALGEBRA
# =============================================================================

class MultisquarePresent(PathHomologyError):
    """The class-based constructions need a digraph without multisquares."""

    def __init__(self, witness: Any):
        self.witness = witness
        super().__init__(f"digraph has a multisquare at {witness}")


class DimensionMismatch(PathHomologyError):
    pass


class LevelMismatch(PathHomologyError):
    pass


class NotInSpan(PathHomologyError):
    """A boundary vector is not a combination of the codomain basis."""


class InvariantViolation(PathHomologyError):
    """A self-check enabled by settings.CHECK_INVARIANTS failed."""


class MethodDisagreement(PathHomologyError):
    """The general and class-based computations of the same object differ."""
