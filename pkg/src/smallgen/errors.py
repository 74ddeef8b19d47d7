"""Exception types shared across the package.

The CLI maps these onto its exit-code contract; library callers can catch
them individually.
"""


class SmallgenError(Exception):
    """Base class for all package-specific errors."""


class InputError(SmallgenError, ValueError):
    """Invalid user-supplied data: bad field parameters, parse errors,
    rejected curve models, malformed certificates."""


class EnumerationCapError(SmallgenError, RuntimeError):
    """A brute-force enumeration would exceed its hard size cap."""


class SearchExhaustedError(SmallgenError, RuntimeError):
    """Every fallback of the generator search failed; carries the log."""

    def __init__(self, message, search_log=None):
        super().__init__(message)
        self.search_log = search_log or []


class PrecisionCapError(SmallgenError, RuntimeError):
    """A local expansion exceeded its proven precision cap.  This signals a
    bug in the kernel, never a user error."""
