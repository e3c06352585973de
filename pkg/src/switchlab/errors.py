"""Exception types shared across the package."""


class SwitchlabError(Exception):
    """Base class for all errors raised by switchlab."""


class DomainError(SwitchlabError):
    """Input is outside the mathematical domain of the operation."""


class LimitExceeded(SwitchlabError):
    """A configured size/work cap was hit before the computation finished."""
