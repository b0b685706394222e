"""Exception hierarchy shared by the whole package."""


class SymcutError(Exception):
    """Base class for every error raised by symcut."""


class DomainError(SymcutError, ValueError):
    """An argument lies outside the domain of an operation."""


class InfeasibleCutError(DomainError):
    """A cut query asked for more value than is left to the right of the knife."""


class SchemaError(SymcutError, ValueError):
    """Malformed instance, valuation or division data."""


class MalformedPartitionError(DomainError):
    pass


class CapabilityError(SymcutError):
    """The requested protocol does not support this number of players."""


class ResourceLimitError(SymcutError):
    """A configured enumeration cap was exceeded."""


class InvariantViolation(SymcutError, RuntimeError):
    """Internal consistency check failed; this signals a bug, not bad input."""
