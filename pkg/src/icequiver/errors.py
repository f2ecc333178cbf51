"""Exception types shared across the package."""


class IceQuiverError(Exception):
    """Base class for all package errors."""


class ParseError(IceQuiverError):
    """A document could not be parsed. ``location`` is a path into the document."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ValidationFailure(IceQuiverError):
    """An object failed validation. Carries the list of violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class PreconditionError(IceQuiverError):
    """An operation was called outside its contract (e.g. mutating a frozen vertex)."""


class TruncationTooSmall(IceQuiverError):
    """The requested computation is not stable at the given truncation bound."""
