"""Exception types shared across the package."""


class ConstructionError(ValueError):
    """Raised when a graph cannot be built from the given data."""


class ContractViolation(ValueError):
    """Raised when a caller breaks an operation's precondition."""


class DomainError(ValueError):
    """Raised for parameters outside the mathematical domain (e.g. non-prime order)."""


class SizeGuardError(RuntimeError):
    """Raised when an exhaustive search is refused because the input is too large."""
