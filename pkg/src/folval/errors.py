"""Exception hierarchy shared by all modules."""
from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .algebra import UPoly


class FolvalError(Exception):
    """Base class for every error raised by the package."""


class UndefinedOrderError(FolvalError, ValueError):
    pass


class InvariantViolationError(FolvalError):
    """A curve that should be invariant by the foliation is not."""


class PreconditionError(FolvalError, ValueError):
    pass


class UnsupportedFieldError(FolvalError):
    """A point that must be examined has non-rational coordinates."""

    def __init__(self, message: str, factor: UPoly | None = None, variable: str = "y"):
        self.factor = factor
        self.variable = variable
        if factor is not None:
            message = f"{message}: {factor.format(variable)} = 0"
        super().__init__(message)


class ResolutionDepthError(FolvalError):
    """The blow-up cascade went deeper than the configured guard."""

    def __init__(self, message: str, partial: Any = None):
        self.partial = partial
        super().__init__(message)


class InfiniteIntersectionError(FolvalError, ValueError):
    """Two curves share a component through the point."""


class ValidationError(FolvalError, ValueError):
    """A projective form fails one of its defining identities."""


class ParseError(FolvalError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")
