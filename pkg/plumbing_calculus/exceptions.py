"""Error types raised by plumbing-calculus.

Library functions raise; only the CLI turns these into exit codes.
Verdicts such as Unknown or NotSatisfied are values, not exceptions.
"""

from enum import Enum
from typing import Optional


class PlumbingError(Exception):
    """Base class for every error raised by the package."""


# Graph construction

class InvalidGraphError(PlumbingError):
    """A graph violates one of the plumbing graph invariants."""


class DslSyntaxError(InvalidGraphError):
    """Malformed graph DSL text."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")


class SelfLoopError(InvalidGraphError):
    pass


class DisconnectedGraphError(InvalidGraphError):
    pass


class NonPositiveAreaError(InvalidGraphError):
    pass


class DuplicateVertexError(InvalidGraphError):
    pass


class UnknownVertexError(InvalidGraphError):
    pass


# Structural preconditions

class VertexNotFound(PlumbingError):
    pass


class EdgeNotFound(PlumbingError):
    pass


class NotATree(PlumbingError):
    pass


class NonzeroGenus(PlumbingError):
    pass


# Linear algebra / GS engine

class PreconditionReason(str, Enum):
    """Why a constructive GS step could not run."""
    NEGATIVE_DEFINITE = "negative_definite"
    NO_POSITIVE_IMAGE = "no_positive_image"
    DECOUPLED_NEGATIVE_VERTEX = "decoupled_negative_vertex"
    NEGATIVE_OFF_DIAGONAL = "negative_off_diagonal"
    NOT_EXACT = "not_exact_on_boundary"


class PreconditionFailed(PlumbingError):

    def __init__(self, reason: PreconditionReason, detail: Optional[str] = None):
        self.reason = reason
        message = reason.value if detail is None else f"{reason.value}: {detail}"
        super().__init__(message)


class InflationRefinementExhausted(PlumbingError):
    """The staircase planner hit its refinement cap."""


class DegenerateIntersectionForm(PlumbingError):
    pass


# Moves

class WeightOutOfRange(PlumbingError):
    pass


class NotBlowDownable(PlumbingError):
    pass


class NotUndoable(PlumbingError):
    """A structural inverse (undo dual blow up / undo claw) does not apply."""


# Classification

class InvalidFraction(PlumbingError):
    pass


class InfinitePi1(PlumbingError):
    pass


class NegativeDefinite(PlumbingError):
    pass


class NotN3(PlumbingError):
    pass


class NoConjugateDefined(PlumbingError):
    pass


class NotInFamily(PlumbingError):
    pass


class TableFormatError(PlumbingError):
    pass
