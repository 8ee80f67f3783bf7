"""Exception types shared across the package."""


class TincellError(Exception):
    """Base class for all domain errors raised by this package."""


class NetworkFormatError(TincellError):
    """Network or strategy file is malformed (syntax, shape or value errors)."""


class DimensionMismatchError(TincellError):
    """Strategy, tuple or weight dimensions do not match the network."""


class PreconditionError(TincellError):
    """An operation was invoked outside its stated domain of validity."""


class BudgetExceededError(TincellError):
    """Requested enumeration exceeds the configured work budget."""

    def __init__(self, count, budget):
        super().__init__(
            f"enumeration would evaluate {count} strategies, over the budget of {budget}"
        )
        self.count = count
        self.budget = budget


class EmptyRegionError(TincellError):
    """The polyhedral region is empty (some constraint bound is negative)."""
