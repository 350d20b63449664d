"""Circulant graphs, canonical double covers and stability."""

from .autgroup import are_isomorphic, automorphism_group, equitable_refinement, find_isomorphism, naive_automorphisms
from .errors import (
    ApplicabilityError,
    AuditFailure,
    CapacityError,
    ContainmentError,
    InvarianceError,
    ValidationError,
)
from .graph import ConnectionSet, Graph, Partition, bipartite_double_cover, circulant
from .perm import PermutationGroup, build_group
from .stability import Reason, StabilityVerdict, Status, classify

__version__ = "0.1.0"

__all__ = [
    "ApplicabilityError",
    "AuditFailure",
    "CapacityError",
    "ConnectionSet",
    "ContainmentError",
    "Graph",
    "InvarianceError",
    "Partition",
    "PermutationGroup",
    "Reason",
    "StabilityVerdict",
    "Status",
    "ValidationError",
    "are_isomorphic",
    "automorphism_group",
    "bipartite_double_cover",
    "build_group",
    "circulant",
    "classify",
    "equitable_refinement",
    "find_isomorphism",
    "naive_automorphisms",
]
