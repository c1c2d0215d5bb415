"""Exceptions shared across the package."""


class GuardError(RuntimeError):
    """Raised when an exhaustive computation would exceed the size guard."""

    def __init__(self, size: int, guard: int):
        super().__init__(f"refusing: {size} trees exceeds guard {guard}")
        self.size = size
        self.guard = guard


class NotApplicableError(ValueError):
    """A method was asked to run on an arrangement outside its family."""
