class AnnigraphError(ValueError):
    """Base class for invalid input to the library."""


class NotEnumerableError(AnnigraphError):
    """Raised when an operation needs the elements of the symbolic integers."""


class BoundExceeded(AnnigraphError):
    """Raised when a structure is larger than the configured enumeration bound."""
