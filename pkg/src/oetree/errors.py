"""Exception types shared across the package."""


class JournalError(Exception):
    """Base class for recoverable errors raised by this package."""


class StaleMark(JournalError):
    """An undo target mark was already invalidated by an older undo."""


class EmptyTree(JournalError):
    """Lookup or rebase on a tree that holds no value."""


class EmptyList(JournalError):
    """Lookup or rebase on an open-ended list that holds no value."""


class BadConfig(JournalError, ValueError):
    """Invalid structure configuration or benchmark settings."""


class BadArgs(JournalError, ValueError):
    """Argument outside the domain of a closed-form formula."""


class NeedsDepthAnnotation(JournalError):
    """Rebase requested on a tree built without collector depth annotations."""


class WriteOnceViolation(AssertionError):
    """A filled slot was bound again.

    This is a fault in the calling algorithm, never a user error, so it
    derives from AssertionError rather than JournalError.
    """
