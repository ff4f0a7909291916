"""Exception taxonomy.

Every failure the library can diagnose gets its own type so callers (and the
command line) can map causes to exit codes without string matching.
"""

from __future__ import annotations


class TorsionError(Exception):
    """Base class for all library errors."""


class RegionSpecError(TorsionError):
    """A region description is malformed (unknown family, bad JSON shape)."""


class ParameterDomainError(TorsionError):
    """A family parameter lies outside its admissible domain."""


class DegenerateRegionError(TorsionError):
    """A polygon fails validation (too few vertices, self-intersection, ...)."""


class UnsupportedVariantError(TorsionError):
    """The requested operation does not apply to this region variant."""


class PrecisionExhaustedError(TorsionError):
    """A pivot lost all significance at the working precision.

    ``degree`` is the first basis degree whose squared norm could not be
    certified positive.
    """

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class InconsistencyError(TorsionError):
    """Two routes to the same quantity disagree beyond tolerance."""


class InvalidCoefficientError(TorsionError):
    """A recurrence coefficient has modulus >= 1.

    ``index`` is the offending position.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NotOrthogonalPolynomialError(TorsionError):
    """A polynomial cannot be reached by the circle recurrence."""


class InvalidMapError(TorsionError):
    """Data that should define a conformal map onto the region fails to."""


class NormalizationError(TorsionError):
    """A measure that must have unit mass does not; ``mass`` is measured."""

    def __init__(self, message: str, mass=None):
        super().__init__(message)
        self.mass = mass


class DegenerateTrialError(TorsionError):
    """A Rayleigh trial function is (numerically) identically zero."""


class PreconditionError(TorsionError):
    """An argument violates a documented precondition."""
