"""Exception hierarchy shared by the library and the CLI."""


class HwError(Exception):
    """Base class for library errors."""


class SpecMismatchError(HwError, ValueError):
    """Objects from different algebras (or the wrong algebra) were combined."""


class DomainError(HwError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class ValidationError(HwError, ValueError):
    """A structure failed its construction-time consistency checks."""


class BudgetExceeded(HwError):
    """A capped loop hit its cap before terminating."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class ConsistencyError(HwError, AssertionError):
    """An internal invariant was violated; indicates a bug, never bad input."""
