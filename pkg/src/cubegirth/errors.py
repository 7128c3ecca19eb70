"""Exception types shared across the package."""

from __future__ import annotations


class CubeGirthError(Exception):
    """Base class for every error raised by cubegirth."""


class ValidationError(CubeGirthError):
    """Input graph fails a structural precondition (e.g. disconnected)."""

    def __init__(self, message: str, components: tuple | None = None):
        super().__init__(message)
        self.components = components


class RepresentationError(CubeGirthError):
    """The graph is not the 1-skeleton of a CAT(0) cube complex."""


class PocsetError(CubeGirthError):
    """Abstract pocset data is inconsistent."""


class InconclusiveError(CubeGirthError):
    """A finite certificate could not be produced within the allowed radius.

    ``radius`` is the radius that would have been needed (or that was
    consumed when the search ran out of budget).
    """

    def __init__(self, message: str, radius: int | None = None):
        super().__init__(message)
        self.radius = radius


class GenerationError(CubeGirthError):
    """A proposed generating set only generates a proper subgroup."""

    def __init__(self, message: str, subgroup_order: int):
        super().__init__(message)
        self.subgroup_order = subgroup_order


class FormatError(CubeGirthError):
    """Malformed text input; carries the 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ChainError(CubeGirthError):
    """A claimed descending chain fails its containment check.

    ``index`` is the first position ``i`` with ``h[i]`` not inside ``h[i-1]``.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class ConstructionError(CubeGirthError):
    """An invariant of a step-by-step construction broke; carries the transcript."""

    def __init__(self, message: str, transcript: list | None = None):
        super().__init__(message)
        self.transcript = transcript or []
