"""Exception hierarchy.

Configuration problems derive from ``ValueError``; numerical failures derive
from ``ArithmeticError``. The CLI maps the two families to exit codes 1 and 2.
"""


class NoisyGroverError(Exception):
    pass


class ConfigurationError(NoisyGroverError, ValueError):
    pass


class NumericalError(NoisyGroverError, ArithmeticError):
    pass


class DimensionTooSmallError(ConfigurationError):
    pass


class DimensionMismatchError(ConfigurationError):
    pass


class ZeroVectorError(ConfigurationError):
    pass


class NotNormalizedError(ConfigurationError):
    pass


class InvalidEpsilonError(ConfigurationError):
    pass


class IndexOutOfRangeError(ConfigurationError, IndexError):
    pass


class DegenerateFitError(ConfigurationError):
    pass


class NumericalFailureError(NumericalError):
    pass


class NumericalDriftError(NumericalError):
    pass


class DegenerateDrawError(NumericalError):
    pass
