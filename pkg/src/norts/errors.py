"""Exception hierarchy shared by all norts modules."""


class NortsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(NortsError):
    """Input data or arguments violate a precondition (CLI exit code 3)."""


class InvalidSpecError(InvalidInputError):
    """A process specification is inadmissible (e.g. non-stationary AR polynomial)."""


class NumericDegeneracyError(NortsError):
    """An estimator broke down numerically on otherwise valid input (CLI exit code 4)."""
