"""Exception hierarchy shared by all tvarkit modules."""


class TvarkitError(Exception):
    """Base class for every error raised by tvarkit."""


class RankMismatch(TvarkitError, ValueError):
    pass


class UnboundedFunctional(TvarkitError, ValueError):
    """A functional does not attain a minimum (it is negative on the tail cone)."""


class UnboundedRegion(TvarkitError, ValueError):
    """A truncated cone region is unbounded, so its lattice points are infinite."""


class InvalidDivisor(TvarkitError, ValueError):
    pass


class ProperUndefinedOnPartialLocus(TvarkitError, ValueError):
    """Properness was requested for a divisor with an empty coefficient."""


class NotProper(TvarkitError, ValueError):
    pass


class WrongBranch(TvarkitError, ValueError):
    pass


class SupportMismatch(TvarkitError, ValueError):
    pass


class EmptyCoefficient(TvarkitError, ValueError):
    pass


class NotNonLc(TvarkitError, ValueError):
    pass


class NotQGorenstein(TvarkitError, ValueError):
    pass


class InvalidGerm(TvarkitError, ValueError):
    pass


class InvalidCenter(TvarkitError, ValueError):
    pass


class InstanceError(TvarkitError, ValueError):
    """An instance file could not be parsed.

    ``location`` is a human readable pointer (``line 3, column 5`` or a field
    path such as ``payload.coefficients.H0.vertices[1]``).
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
