"""Exception types shared across modules.

The CLI maps these onto distinct error categories; library code raises them
directly so callers can tell a bad reference from a violated precondition.
"""

__all__ = [
    "IdemconvError",
    "MismatchedParents",
    "PreconditionError",
    "BudgetExceeded",
    "ScenarioError",
]


class IdemconvError(Exception):
    """Base class for library errors."""


class MismatchedParents(IdemconvError):
    """Two objects that must share one parent group do not."""


class PreconditionError(IdemconvError):
    """A documented operation precondition does not hold for the input."""


class BudgetExceeded(IdemconvError):
    """A configured resource cap (e.g. free-product word budget) was hit."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ScenarioError(IdemconvError):
    """A scenario file references something that does not exist."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field
