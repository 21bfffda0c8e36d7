"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a mathematical precondition; messages use 1-based indices."""


class InternalError(AssertionError):
    """An invariant the algorithms rely on was observed to fail."""
