"""Exception types shared across the library.

Two families: :class:`ValidationError` for inputs that violate a documented
precondition, and :class:`NumericalBreakdown` for computations that cannot
continue at the requested size.  The CLI maps them to exit codes 2 and 3.
"""


class BiradialError(Exception):
    """Base class for all library errors."""


class ValidationError(BiradialError):
    """An input violates a documented precondition."""


class ThreeOnCircle(ValidationError):
    """Three or more support points share an origin-centred circle."""


class DuplicatePoint(ValidationError):
    """Two support points coincide within tolerance."""


class NonPositiveWeight(ValidationError):
    """A measure weight is zero or negative."""


class MassNotNormalizable(ValidationError):
    """Total mass is nonpositive or too far from one to renormalize."""


class InvalidAngle(ValidationError):
    """A chord angle produces a degenerate chord or a nonpositive weight."""


class ZeroStart(ValidationError):
    """The start vector of a Krylov recurrence is (numerically) zero."""


class ZeroRhs(ValidationError):
    """The right-hand side of a linear system is (numerically) zero."""


class NotHermitian(ValidationError):
    """Matrix handed to the Hermitian eigensolver is not Hermitian."""


class SingularSystem(ValidationError):
    """A two-point interpolation system is singular (coincident angles)."""


class InsufficientMoments(ValidationError):
    """Too few moments for the requested matrix order."""


class NumericalBreakdown(BiradialError):
    """A computation cannot continue at the requested size."""


class Breakdown(NumericalBreakdown):
    """Orthogonalization hit a numerically zero recurrence coefficient."""


class IndefiniteMoments(NumericalBreakdown):
    """Moment Gram matrix is not positive definite at the required order."""


class ZeroFirstEntry(NumericalBreakdown):
    """A con-eigenvector has numerically zero first entry (reducible input)."""


class SingularMatrix(NumericalBreakdown):
    """Negative powers requested of a singular matrix."""
