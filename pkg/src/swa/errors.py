"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SwaError(Exception):
    """Base class; ``kind`` is the machine-readable name used by the CLI."""

    kind = "error"


class StructuralError(SwaError):
    kind = "structural"


class InputError(SwaError):
    kind = "input"


class CapacityError(SwaError):
    kind = "capacity"


class InvalidDurationError(SwaError):
    kind = "invalid-duration"


class ParseError(SwaError):
    kind = "syntax"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")
