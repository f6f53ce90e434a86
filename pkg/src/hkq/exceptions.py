"""Domain exception classes for hkq.

Three families map onto CLI exit codes: InputError (1), PreconditionError (2)
and InconsistencyError (3).
"""


class InputError(Exception):
    """Raised when user input cannot be parsed or fails validation."""


class ParseError(InputError):
    """Raised when JSON, a rational literal or a polynomial string is malformed."""


class InvalidInputError(InputError):
    """Raised when parsed input breaks a structural rule (zero normal, rank, arity)."""


class ReportError(InputError):
    """Raised when a report cannot be written to the requested location."""


class PreconditionError(Exception):
    """Raised when an operation is called on data outside its domain."""


class NonSimpleError(PreconditionError):
    """Raised when an arrangement has hyperplanes meeting in too small a codimension."""


class NonSmoothError(PreconditionError):
    """Raised when a d-subset of normals has determinant other than 0 or ±1."""


class NonGenericError(PreconditionError):
    """Raised when edge lengths admit a subset S with equal sums on S and S^c."""


class InfeasibleError(PreconditionError):
    """Raised when a polyhedron is empty but the operation needs a point."""


class UnboundedError(PreconditionError):
    """Raised when a polyhedron is unbounded but the operation needs a polytope."""


class NotFullDimensionalError(PreconditionError):
    """Raised when a polyhedron has empty interior but the operation samples it."""


class NonInvariantError(PreconditionError):
    """Raised when a polynomial is not translation-invariant or not homogeneous."""


class GradingError(PreconditionError):
    """Raised when a ring map does not send generators to homogeneous images."""


class RingMismatchError(PreconditionError):
    """Raised when polynomials or ideals from different rings are combined."""


class ZeroElementError(PreconditionError):
    """Raised when a nonzero element is required (colon by zero, annihilator of 0)."""


class InconsistencyError(Exception):
    """Raised when an internal cross-check fails."""


class InterpolationError(InconsistencyError):
    """Raised when a volume interpolation disagrees on held-out sample points."""


class InexactDivisionError(InconsistencyError):
    """Raised when a polynomial division that must be exact leaves a remainder."""


class VerificationError(InconsistencyError):
    """Raised when a claimed identity fails an exact check."""
