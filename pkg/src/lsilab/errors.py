"""Exception hierarchy shared by all lsilab modules.

Every error raised by the library derives from :class:`LsiLabError`, so
callers (in particular the CLI) can distinguish validation problems from
genuine numerical findings.
"""


class LsiLabError(Exception):
    """Base class for all lsilab errors."""


class InvalidInputError(LsiLabError):
    """Malformed data: bad grids, non-finite values, unparseable files."""


class UnknownFamilyError(LsiLabError):
    """Requested closed-form function family does not exist."""


class ParamOutOfRangeError(LsiLabError):
    """A numeric parameter violates its documented range."""


class DomainMismatchError(LsiLabError):
    """Operation requires a different domain (kind, endpoints or length)."""


class TruncationTooLargeError(LsiLabError):
    """Fourier truncation does not fit on the sample grid."""


class NotRealValuedError(LsiLabError):
    """Fourier synthesis has an imaginary residue above tolerance."""


class NotHermitianError(LsiLabError):
    """Coefficients violate the conjugate symmetry of real functions."""


class NegativeFunctionError(LsiLabError):
    """Function has values below the admissible negativity tolerance."""


class NonPositiveFunctionError(LsiLabError):
    """Function must be strictly positive for this operation."""


class NotNormalizedError(LsiLabError):
    """Squared mass differs from 1 beyond tolerance."""


class ZeroMassError(LsiLabError):
    """Root mean square (or mean) is numerically zero."""


class EvenSampleCountError(LsiLabError):
    """Reflection needs an odd sample count so the fold lands on a node."""


class InsufficientDataError(LsiLabError):
    """Too few distinct data points for the requested extrapolation."""
