"""Exception types shared across the package."""


class SunconjError(Exception):
    """Base class for all package errors."""


class InvalidRangeError(SunconjError, ValueError):
    pass


class ResourceLimitError(SunconjError):
    """Raised when a request would exceed a configured memory/work guard."""


class DomainError(SunconjError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class FactorizationTimeout(SunconjError):
    """Pollard rho exhausted its iteration budget on a composite cofactor."""

    def __init__(self, n, budget):
        super().__init__(f"could not split {n} within {budget} rho iterations")
        self.n = n
        self.budget = budget
