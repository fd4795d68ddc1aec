"""Exception hierarchy shared by all modules."""


class BookKnotsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BookKnotsError, ValueError):
    """An argument lies outside the domain of the operation."""


class PreconditionError(BookKnotsError, ValueError):
    """An operation was called on input violating its stated precondition."""


class LinkCaseError(DomainError):
    """A construction would produce a multi-component link instead of a knot."""


class CapacityError(BookKnotsError):
    """The requested computation exceeds a configured size limit."""


class FixtureError(BookKnotsError):
    """Bundled reference data does not reproduce its stored fingerprints."""


class CheckpointError(BookKnotsError):
    """A census checkpoint file is unreadable or inconsistent with the run."""


class ParseError(BookKnotsError, ValueError):
    """Malformed text input; ``position`` is the 0-based offending index."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
