from __future__ import annotations

from typing import Any


class QRobustError(Exception):
    """Base class for errors raised by this package."""


class ElementError(QRobustError, ValueError):
    """A value that does not belong to the quantale (or space) it was used with."""

    def __init__(self, message: str, element: Any = None):
        super().__init__(message)
        self.element = element


class LawViolation(QRobustError):
    """A structure fails one of its defining laws; ``witness`` pins the failing instance."""

    def __init__(self, law: str, witness: Any = None, message: str | None = None):
        super().__init__(message or f"law {law!r} violated at {witness!r}")
        self.law = law
        self.witness = witness


class UnsupportedOperation(QRobustError, NotImplementedError):
    pass


class PreconditionError(QRobustError, ValueError):
    pass


class GuardError(QRobustError, ValueError):
    """An exhaustive enumeration would exceed its size guard."""
