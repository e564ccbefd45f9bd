"""Exception types shared across the package."""


class DivintError(Exception):
    """Base class for package-specific errors."""


class ResourceLimitError(DivintError):
    """A configured cap would be exceeded.

    The message names the cap and how to override it.
    """


class TheoremViolationError(DivintError):
    """An invariant that should hold unconditionally failed.

    This never fires on correct code; it exists so that a bug (or a genuine
    counterexample to one of the verified laws) surfaces loudly instead of
    producing a silently wrong table.  `counterexample` is a JSON-serializable
    payload describing the failing instance.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class PreconditionError(DivintError, ValueError):
    """Caller violated a documented precondition; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
