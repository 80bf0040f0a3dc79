"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MctxError(Exception):
    """Base class for all library errors."""


class TypeMismatch(MctxError):
    """Domain/codomain or hole boundaries do not line up."""


class TheoryMismatch(MctxError):
    """Two morphisms from different theories were combined."""


class NotSymmetric(MctxError):
    """A braiding was requested from a non-symmetric theory."""


class NotCartesian(MctxError):
    """A cartesian-only operation was requested from another theory."""


class UndecidedEquality(MctxError):
    """Equality of free terms is only available through an interpretation."""


class NotEnumerable(MctxError):
    """The theory cannot list (or probe) the requested hom-set."""


class EnumerationTooLarge(NotEnumerable):
    """The requested hom-set exists but exceeds the enumeration budget."""


class MissingGenerator(MctxError):
    """A free term mentions a generator that the interpretation lacks."""


class FactorizationError(MctxError):
    """A supplied factorization does not recompose to the given representative."""


class ParseError(MctxError):
    """Malformed input text or file."""


class SessionError(TypeMismatch):
    """A party's steps do not match its session type; ``stage`` is 1-based."""

    def __init__(self, message: str, stage: int | None = None) -> None:
        super().__init__(message)
        self.stage = stage
