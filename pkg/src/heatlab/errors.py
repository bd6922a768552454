"""Exception and warning types shared across the package."""


class HeatlabError(Exception):
    """Base class for all library errors."""


class DomainError(HeatlabError, ValueError):
    """Argument outside the domain where a formula is valid."""


class RangeError(DomainError):
    """Time parameter outside the supported floating-point range."""


class NonConvergent(HeatlabError, ArithmeticError):
    """A series did not reach the requested tolerance within its term cap."""


class DegenerateIndex(DomainError):
    """Index where |k - nu| vanishes and the closed form is 0/0."""


class DenominatorVanishes(HeatlabError, ArithmeticError):
    """A Kummer denominator became nonpositive."""


class IntegrationFailure(HeatlabError, ArithmeticError):
    """The ODE integrator stopped before reaching the boundary."""


class TailBoundUnavailable(HeatlabError):
    """The spectrum carries no certified linear growth bound."""


class ConsistencyError(HeatlabError, ArithmeticError):
    """Two evaluation routes for the same quantity disagree."""


class SlowConvergence(UserWarning):
    """Truncation needs many terms (thin annulus)."""


class IllConditioned(UserWarning):
    """Least-squares design matrix is badly conditioned."""
