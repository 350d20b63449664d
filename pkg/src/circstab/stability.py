"""Stability of graphs with respect to the canonical double cover.

``X`` is stable when ``Aut(X x K2)`` is no larger than ``Aut(X) x Z2``. For
connected non-bipartite ``X`` three equivalent tests are offered: automorphism
orders, centrality of the sheet swap ``(v, i) -> (v, i+1)``, and equality of
the stabilizers of the two lifts of a vertex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .autgroup import automorphism_group
from .errors import ApplicabilityError, AuditFailure
from .graph import (
    Graph,
    Partition,
    bipartite_double_cover,
    is_bipartite,
    is_connected,
    is_irreducible,
    is_isomorphism,
    quotient_graph,
)
from .perm import Permutation, compose, is_identity

DEFAULT_ELEMENT_CAP = 10**6


class Status(str, enum.Enum):
    STABLE = "Stable"
    TRIVIALLY_UNSTABLE = "TriviallyUnstable"
    NONTRIVIALLY_UNSTABLE = "NontriviallyUnstable"
    NOT_APPLICABLE = "NotApplicable"


class Reason(str, enum.Enum):
    DISCONNECTED = "disconnected"
    BIPARTITE_NONTRIVIAL_AUT = "bipartite-with-nontrivial-aut"
    REDUCIBLE = "reducible"
    BIPARTITE = "bipartite"
    NONE = "none"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    reason: Reason
    aut_x_order: int
    aut_bx_order: int

    def __post_init__(self) -> None:
        if self.status is Status.STABLE and self.aut_bx_order != 2 * self.aut_x_order:
            raise AuditFailure("stable verdict with |Aut(B(X))| != 2|Aut(X)|")
        if self.status is Status.NONTRIVIALLY_UNSTABLE and (
            self.reason is not Reason.NONE or self.aut_bx_order <= 2 * self.aut_x_order
        ):
            raise AuditFailure("inconsistent nontrivially-unstable verdict")

    @property
    def is_stable(self) -> bool:
        return self.status is Status.STABLE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "reason": self.reason.value,
            "autX": str(self.aut_x_order),
            "autBX": str(self.aut_bx_order),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StabilityVerdict":
        return cls(Status(data["status"]), Reason(data["reason"]), int(data["autX"]), int(data["autBX"]))


def sheet_swap(n: int) -> Permutation:
    """The involution ``(v, i) -> (v, i+1)`` on the double cover of an n-vertex graph."""
    return tuple(range(n, 2 * n)) + tuple(range(n))


def _require_connected_nonbipartite(x: Graph) -> None:
    if not is_connected(x):
        raise ApplicabilityError("graph is disconnected")
    if is_bipartite(x) is not None:
        raise ApplicabilityError("graph is bipartite")


def _orders(x: Graph) -> tuple[int, int]:
    return automorphism_group(x).order(), automorphism_group(bipartite_double_cover(x)).order()


def is_stable_by_order(x: Graph) -> StabilityVerdict:
    aut_x, aut_bx = _orders(x)
    if not is_connected(x) or is_bipartite(x) is not None:
        return StabilityVerdict(Status.NOT_APPLICABLE, Reason.NONE, aut_x, aut_bx)
    if aut_bx < 2 * aut_x:
        raise AuditFailure("Aut(X) x Z2 does not embed in Aut(B(X))")
    if aut_bx == 2 * aut_x:
        return StabilityVerdict(Status.STABLE, Reason.NONE, aut_x, aut_bx)
    if not is_irreducible(x):
        return StabilityVerdict(Status.TRIVIALLY_UNSTABLE, Reason.REDUCIBLE, aut_x, aut_bx)
    return StabilityVerdict(Status.NONTRIVIALLY_UNSTABLE, Reason.NONE, aut_x, aut_bx)


def is_stable_by_tau_central(x: Graph) -> bool:
    _require_connected_nonbipartite(x)
    group = automorphism_group(bipartite_double_cover(x))
    return group.is_central_element(sheet_swap(x.n))


def is_stable_by_stabilizer(x: Graph) -> bool:
    """Compare the stabilizers in Aut(B(X)) of the two lifts of vertex 0."""
    _require_connected_nonbipartite(x)
    if not automorphism_group(x).is_transitive():
        raise ApplicabilityError("graph is not vertex-transitive")
    group = automorphism_group(bipartite_double_cover(x))
    lower = group.point_stabilizer(0)
    upper = group.point_stabilizer(x.n)
    return lower.order() == upper.order() and all(upper.contains(g) for g in lower.gens)


def classify(x: Graph) -> StabilityVerdict:
    aut_x, aut_bx = _orders(x)
    if not is_connected(x):
        return StabilityVerdict(Status.TRIVIALLY_UNSTABLE, Reason.DISCONNECTED, aut_x, aut_bx)
    if is_bipartite(x) is not None:
        if aut_x > 1:
            return StabilityVerdict(Status.TRIVIALLY_UNSTABLE, Reason.BIPARTITE_NONTRIVIAL_AUT, aut_x, aut_bx)
        return StabilityVerdict(Status.NOT_APPLICABLE, Reason.BIPARTITE, aut_x, aut_bx)
    if not is_irreducible(x):
        return StabilityVerdict(Status.TRIVIALLY_UNSTABLE, Reason.REDUCIBLE, aut_x, aut_bx)
    return is_stable_by_order(x)


def _bipartition(y: Graph) -> Partition:
    if not is_connected(y):
        raise ApplicabilityError("graph is disconnected")
    parts = is_bipartite(y)
    if parts is None or len(parts) != 2:
        raise ApplicabilityError("graph is not bipartite")
    return parts


def strongly_switching_involutions(y: Graph, cap: int = DEFAULT_ELEMENT_CAP) -> list[Permutation]:
    """Involutive automorphisms swapping the colour classes and fixing no edge setwise."""
    left, _ = _bipartition(y).blocks
    left_set = set(left)
    out = []
    for g in automorphism_group(y).elements(cap):
        if is_identity(g) or not is_identity(compose(g, g)):
            continue
        if any(g[v] in left_set for v in left):
            continue
        if any(g[u] == v for u, v in y.edges()):
            continue
        out.append(g)
    return sorted(out)


def recover_base_graphs(y: Graph, cap: int = DEFAULT_ELEMENT_CAP) -> list[tuple[Permutation, Graph]]:
    """Every ``(gamma, X)`` with ``X`` the quotient of ``y`` by the orbits of ``<gamma>``.

    Each ``X`` is checked to satisfy ``B(X) == y`` under the explicit map
    ``(q, 0) -> a``, ``(q, 1) -> gamma(a)`` where ``a`` is the left-class
    member of block ``q``.
    """
    left, _ = _bipartition(y).blocks
    left_set = set(left)
    out = []
    for g in strongly_switching_involutions(y, cap):
        blocks = sorted({tuple(sorted((v, g[v]))) for v in range(y.n)})
        x = quotient_graph(y, Partition(tuple(blocks)))
        k = len(blocks)
        mapping = [0] * (2 * k)
        for q, b in enumerate(blocks):
            a = b[0] if b[0] in left_set else b[1]
            mapping[q], mapping[q + k] = a, g[a]
        if not is_isomorphism(bipartite_double_cover(x), y, mapping):
            raise AuditFailure("quotient by a switching involution is not a base graph")
        out.append((g, x))
    return out


def worthiness_check(x: Graph) -> bool:
    """Whether irreducibility of ``X`` and of ``B(X)`` coincide.

    Holds whenever ``X`` has no isolated vertex. An isolated vertex has two
    twin copies in ``B(X)``, so ``K1`` is the smallest exception.
    """
    return is_irreducible(x) == is_irreducible(bipartite_double_cover(x))


def stability_criteria(x: Graph) -> Optional[tuple[bool, bool, bool]]:
    """The three stability tests, or None if they do not apply."""
    if not is_connected(x) or is_bipartite(x) is not None:
        return None
    if not automorphism_group(x).is_transitive():
        return None
    return (
        is_stable_by_order(x).is_stable,
        is_stable_by_tau_central(x),
        is_stable_by_stabilizer(x),
    )
