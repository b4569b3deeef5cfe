"""Exception hierarchy for pinchlab."""

from typing import Any


class PinchlabError(Exception):
    """Base class for every error raised by the library."""

    kind = "pinchlab_error"
    exit_code = 1


class StructuralError(PinchlabError):
    """Mismatched widths, ambient dimensions, alignments or non-closed complexes."""

    kind = "structural_error"


class CapacityError(PinchlabError):
    """A size cap or the simplex budget was exceeded."""

    kind = "capacity_error"

    def __init__(self, message: str, partial: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.partial = partial or {}


class UnknownElementError(PinchlabError, LookupError):
    """An element, vertex or arc label is not part of the structure."""

    kind = "unknown_element"
    exit_code = 2


class PreconditionError(PinchlabError):
    """Input outside the documented range of an operation."""

    kind = "precondition_error"
    exit_code = 2


class InvalidArgumentError(PinchlabError, ValueError):
    """A command-line value could not be parsed."""

    kind = "invalid_argument"
    exit_code = 2


class DomainError(PinchlabError):
    """The operation is undefined on this region or object."""

    kind = "domain_error"


class DegreeDropError(PinchlabError):
    """The top-degree coefficients vanish within tolerance."""

    kind = "degree_drop"


class BoundaryError(PinchlabError):
    """The parameter maps to the boundary of the coefficient chart."""

    kind = "boundary_error"


class ProfileTooLargeError(PinchlabError):
    """The region profile constants are too large for the fixed-point iteration to contract."""

    kind = "profile_too_large"


class MembershipError(PinchlabError):
    """The angle sum of a configuration is not a multiple of 2*pi."""

    kind = "membership_error"


class ScheduleError(PinchlabError):
    """An event of a pinch schedule is invalid for the evolving diagram."""

    kind = "schedule_error"

    def __init__(self, message: str, index: int) -> None:
        super().__init__(f"event {index}: {message}")
        self.index = index
