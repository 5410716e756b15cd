"""Exception types shared across the analysis pipeline."""


class RefawareError(Exception):
    """Base class for all errors raised by this package."""


class EmptyChangeSet(RefawareError):
    """A change set with no commits cannot be analyzed."""


class RevisionNotFound(RefawareError):
    """A revision could not be resolved in the repository."""


class FileNotFound(RefawareError):
    """A path does not exist at the requested revision."""


class AdapterMismatch(RefawareError):
    """The language adapter does not claim the given file."""


class KindMismatch(RefawareError):
    """An operation was applied to an element or refactoring of the wrong kind."""


class MissingBody(RefawareError):
    """A refactoring no longer carries the element bodies needed for alignment."""


class ReportNotFound(RefawareError):
    """No stored report exists under the requested key."""


class ValidationError(RefawareError):
    """A document failed schema validation.

    ``field_path`` names the offending field, e.g. ``pairs[0].refactorings``.
    """

    def __init__(self, message: str, field_path: str = ""):
        super().__init__(message)
        self.field_path = field_path
