"""Exception types shared across the package."""


class DiscCensusError(Exception):
    """Base class for errors raised by disc_census."""


class InvalidInput(DiscCensusError, ValueError):
    """An argument violates an operation's precondition."""


class BudgetExceeded(DiscCensusError):
    """A computation would exceed its configured work budget."""


class InternalInconsistency(DiscCensusError):
    """Two independent computation routes disagreed. Indicates a bug."""


class ConditionFailed(DiscCensusError):
    """A checked hypothesis does not hold; any attached value is only an estimate."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class NetworkFailure(DiscCensusError):
    """A remote lookup could not be completed."""


class FixtureMissing(InvalidInput):
    """Offline mode was requested but no cached or bundled record exists."""
