"""Exception types shared across the library."""


class ContractViolation(ValueError):
    """An operation was called outside its documented preconditions."""


class NumericFailure(RuntimeError):
    """A numeric routine could not establish its certified bracket."""


class EmptyFamilyError(RuntimeError):
    """No map in the requested family produced a valid certificate."""


class UnsupportedDomainError(RuntimeError):
    """The computation needs a model domain this build does not serve."""


class SuiteConfigError(ValueError):
    """A verification-suite configuration failed to parse or validate."""
