"""Shared exception types."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularPointError(ValueError):
    """Evaluation was requested exactly at a non-removable singular point.

    Raised instead of returning infinity so that grid evaluators can skip
    (and mark) the point deliberately.
    """


class NotAvailableError(LookupError):
    """The requested function (pdf/cdf/cf) is not defined for this model."""
