"""Exception types shared across the package."""

from __future__ import annotations


class TakeawayError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(TakeawayError):
    """Vertex capacity or a configured resource cap was exceeded."""


class ParseError(TakeawayError):
    """Input could not be parsed as a complex."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class NotAFaceError(TakeawayError):
    """A move named a face that is not present in the position."""


class NotABinaryStarError(TakeawayError):
    """A vertex pair failed the binary-star conditions."""


class UnknownPresetError(TakeawayError):
    """Preset token is not in the catalog."""


class CacheFormatError(TakeawayError):
    """Persisted solver cache has the wrong magic or version."""
