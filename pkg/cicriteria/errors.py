class CriteriaError(Exception):
    pass


class InvalidDescriptorError(CriteriaError, ValueError):
    """Unknown Dynkin type, rank out of range, or node outside 1..rank."""


class DataUnavailableError(CriteriaError):
    """The invariant tables carry no value for the requested variety."""


class PreconditionError(CriteriaError, ValueError):
    pass


class InconclusiveComparisonError(CriteriaError):
    """An interval comparison could not be decided at the working precision."""


class SearchInvariantError(CriteriaError):
    pass
