"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested computation."""


class EnumerationLimitError(DomainError):
    """Exhaustive enumeration was requested above the configured size limit."""


class NumericalFaultError(ArithmeticError):
    """A floating-point evaluation drifted further than its tolerance allows."""
