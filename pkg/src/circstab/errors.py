"""Exception types shared across the package."""


class CircstabError(Exception):
    """Base class for all package errors."""


class ValidationError(CircstabError, ValueError):
    """Malformed input: bad connection set, partition, degree mismatch, ..."""


class CapacityError(CircstabError):
    """A size cap (vertex count, element enumeration, order cap) was exceeded."""


class ApplicabilityError(CircstabError, ValueError):
    """An operation was called on a graph outside its precondition."""


class InvarianceError(ValidationError):
    """A set that must be a union of orbits is not invariant under the group."""


class ContainmentError(ValidationError):
    """A putative subgroup has a generator outside the ambient group."""


class AuditFailure(CircstabError, AssertionError):
    """A check that holds by theorem came out false (implementation bug)."""
