"""Exception types raised by the library.

All of them subclass :class:`ValueError` so callers that only care about
"bad input" can catch that.
"""


class DegenerateAbscissaError(ValueError):
    """All abscissae are equal, so no regression line exists."""


class EmptyEstimateError(ValueError):
    """A Monte Carlo estimate has no hitting lines to summarise."""


class NotPrimitiveError(ValueError):
    """The incidence matrix of a morphism has no strictly positive power."""
