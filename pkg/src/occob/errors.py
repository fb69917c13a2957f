"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "OcError",
    "CompositionError",
    "ClosedComponentError",
    "InfeasibleObjectError",
    "DslSyntaxError",
    "DslValidationError",
]


class OcError(Exception):
    """Base class for all domain errors raised by this package."""


class CompositionError(OcError):
    """Gluing failed: interface mismatch or incoherent boundary data."""


class ClosedComponentError(CompositionError):
    """Gluing produced a component with empty boundary.

    Closed surface components carry no anchoring data and are rejected by
    validation, so composition refuses to create them.  This cannot happen
    when both factors satisfy the b-condition (every component keeps some
    outgoing boundary).
    """


class InfeasibleObjectError(OcError):
    """No connected genus-zero realizer exists for the requested object.

    Raised when a permutation cycle is not brane-coherent: the connecting
    arcs of the would-be boundary circle would need two different labels.
    """


class DslError(OcError):
    """Base class for text format errors.  Carries a source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self) -> str:  # pragma: no cover - trivial
        base = super().__str__()
        if self.line:
            return f"line {self.line}, column {self.column}: {base}"
        return base


class DslSyntaxError(DslError):
    """Tokenizer, grammar, or name-resolution failure."""


class DslValidationError(DslError):
    """The text parsed but a cobordism failed structural validation."""

    def __init__(self, message, line=0, column=0, violations=()):
        super().__init__(message, line, column)
        self.violations = tuple(violations)
