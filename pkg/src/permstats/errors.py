"""Exception types shared by all modules."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ResourceError(RuntimeError):
    """A computation would exceed its enumeration or state budget."""
