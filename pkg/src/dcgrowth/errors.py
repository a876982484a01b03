class GroupComputationError(Exception):
    """Base class for domain errors; ``code`` is the short name used in JSON reports."""

    code = "error"

    def __init__(self, message="", **detail):
        super().__init__(message)
        self.detail = detail


class RadiusExceeded(GroupComputationError):
    code = "radius_exceeded"


class NotCertified(GroupComputationError):
    code = "not_certified"


class BudgetExhausted(GroupComputationError):
    code = "budget_exhausted"


class NotFound(GroupComputationError):
    code = "not_found"


class NoneQualify(GroupComputationError):
    code = "none_qualify"


class SeparatorFailure(GroupComputationError):
    code = "separator_failure"


class ConfigInvalid(GroupComputationError):
    code = "config_invalid"


class DegenerateSeries(GroupComputationError):
    code = "degenerate_series"
