"""Circulant-specific analysis: double-cover connection sets, arc-transitivity,
normality, wreath decompositions and audits of the structural lemmas used in
the odd-order stability theorem.

Audit functions return ``True`` when the statement they check holds; since
each statement is a theorem, ``False`` means a bug somewhere upstream.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .autgroup import automorphism_group, find_isomorphism
from .errors import ApplicabilityError, AuditFailure, InvarianceError
from .graph import (
    ConnectionSet,
    Graph,
    bipartite_double_cover,
    circulant,
    deleted_wreath_product,
    empty_graph,
    is_bipartite,
    is_connected,
    is_irreducible,
    is_isomorphism,
    neighborhood_partition,
    relabel,
    wreath_product,
)
from .perm import PermutationGroup, cyclic_rotation, cycles
from .stability import Status, is_stable_by_order

DEFAULT_CENSUS_CAP = 10**6


def graph_of(cs: ConnectionSet) -> Graph:
    return circulant(cs)


def aut(cs: ConnectionSet) -> PermutationGroup:
    return automorphism_group(circulant(cs))


def vertex_stabilizer(cs: ConnectionSet) -> PermutationGroup:
    return aut(cs).point_stabilizer(0)


def euler_phi(n: int) -> int:
    return sum(1 for u in range(1, n + 1) if math.gcd(u, n) == 1)


def units(n: int) -> list[int]:
    return [u for u in range(1, n) if math.gcd(u, n) == 1] if n > 1 else [0]


def _require_connected(cs: ConnectionSet) -> Graph:
    g = circulant(cs)
    if not is_connected(g):
        raise ApplicabilityError(f"{cs} is disconnected")
    return g


# -- double cover ------------------------------------------------------------

def double_cover_connection_set(cs: ConnectionSet) -> ConnectionSet:
    """``k + 2S`` over ``Z_2k`` for a circulant of odd order ``k``."""
    k = cs.n
    if k % 2 == 0:
        raise ApplicabilityError(f"order {k} is even")
    return ConnectionSet(2 * k, tuple((k + 2 * s) % (2 * k) for s in cs.elems))


def double_cover_map(k: int) -> tuple[int, ...]:
    """``(x, i) -> 2x + k*i mod 2k`` with ``(x, i)`` encoded as ``x + k*i``."""
    return tuple((2 * x + k * i) % (2 * k) for i in (0, 1) for x in range(k))


def double_cover_formula_check(cs: ConnectionSet) -> bool:
    """The explicit map carries ``B(circulant(cs))`` onto ``circulant(k + 2S)`` exactly."""
    lifted = double_cover_connection_set(cs)
    return relabel(bipartite_double_cover(circulant(cs)), double_cover_map(cs.n)) == circulant(lifted)


# -- symmetry ----------------------------------------------------------------

def is_arc_transitive(cs: ConnectionSet) -> bool:
    _require_connected(cs)
    if not cs.elems:
        return True
    return len(vertex_stabilizer(cs).orbits_on_set(cs.elems)) == 1


def rotation_group(n: int) -> PermutationGroup:
    return PermutationGroup(n, [cyclic_rotation(n)])


def is_normal_circulant(cs: ConnectionSet) -> bool:
    return aut(cs).is_normal_subgroup(rotation_group(cs.n))


def multiplier_stabilizer_order(cs: ConnectionSet) -> int:
    """``|Aut(Z_n, S)|``: units ``u`` with ``uS = S``."""
    s = set(cs.elems)
    return sum(1 for u in units(cs.n) if {u * x % cs.n for x in s} == s)


def connection_orbits(cs: ConnectionSet) -> list[ConnectionSet]:
    """Orbits of the vertex stabilizer on ``S``; each must be inverse-closed."""
    out = []
    for orb in vertex_stabilizer(cs).orbits_on_set(cs.elems):
        try:
            out.append(ConnectionSet(cs.n, orb))
        except ValueError as exc:
            raise AuditFailure(f"stabilizer orbit {orb} is not inverse-closed") from exc
    return out


# -- decompositions ----------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """``X = Y wr K_d-bar`` (lexicographic) or ``X = Y wr_d K_d-bar`` (deleted)."""

    quotient: ConnectionSet
    d: int

    def to_json(self) -> dict:
        return {"quotient": self.quotient.to_json(), "d": self.d}


def reducible_decomposition(cs: ConnectionSet) -> Optional[Decomposition]:
    """Split a reducible connected circulant as ``Y wr K_d-bar`` with ``Y`` irreducible.

    Twin classes must be the cosets of the order-``d`` subgroup; vertex
    ``x`` then maps to ``(x mod m, x div m)`` with ``m = n/d``.
    """
    g = _require_connected(cs)
    blocks = neighborhood_partition(g).blocks
    if len(blocks) == g.n:
        return None
    n = cs.n
    d = len(blocks[0])
    if any(len(b) != d for b in blocks):
        raise AuditFailure("twin classes of unequal size in a circulant")
    m = n // d
    for b in blocks:
        if set(b) != {(b[0] + j * m) % n for j in range(d)}:
            raise AuditFailure("twin classes are not cosets of a subgroup")
    y = ConnectionSet(m, tuple(s % m for s in cs.elems))
    mapping = tuple((x % m) * d + x // m for x in range(n))
    if not is_isomorphism(g, wreath_product(circulant(y), empty_graph(d)), mapping):
        raise AuditFailure("wreath decomposition map is not an isomorphism")
    if not is_irreducible(circulant(y)):
        raise AuditFailure("wreath quotient is reducible")
    return Decomposition(y, d)


def deleted_wreath_decomposition(cs: ConnectionSet) -> Optional[Decomposition]:
    """First (largest) ``d > 3`` with ``gcd(d, n/d) = 1`` and ``X = Sigma wr_d K_d-bar``.

    ``Sigma`` is ``circulant(S mod m)``; the CRT map ``x -> (x mod m, x mod d)``
    is tried first, then a general isomorphism search.
    """
    g = circulant(cs)
    n = cs.n
    for d in sorted((d for d in range(4, n + 1) if n % d == 0), reverse=True):
        m = n // d
        if m < 2 or math.gcd(d, m) != 1:
            continue
        reduced = {s % m for s in cs.elems}
        if 0 in reduced:
            continue
        try:
            sigma = ConnectionSet(m, tuple(reduced))
        except ValueError:
            continue
        target = deleted_wreath_product(circulant(sigma), d)
        crt = tuple((x % m) * d + x % d for x in range(n))
        if is_isomorphism(g, target, crt) or find_isomorphism(g, target) is not None:
            return Decomposition(sigma, d)
    return None


class KovacsLiCase(str, enum.Enum):
    COMPLETE = "Complete"
    WREATH = "WreathDecomposable"
    DELETED_WREATH = "DeletedWreathDecomposable"
    NORMAL = "NormalCirculant"


@dataclass(frozen=True)
class KovacsLiDiagnosis:
    cases: frozenset[KovacsLiCase]
    witnesses: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        order = list(KovacsLiCase)
        names = sorted(self.cases, key=order.index)
        return {
            "cases": [c.value for c in names],
            "witnesses": {
                c.value: (self.witnesses[c].to_json() if self.witnesses.get(c) is not None else None)
                for c in names
            },
        }


def kovacs_li_diagnosis(cs: ConnectionSet) -> KovacsLiDiagnosis:
    """Which arc-transitive circulant cases apply; each tested independently."""
    if not is_arc_transitive(cs):
        raise ApplicabilityError(f"{cs} is not arc-transitive")
    cases, witnesses = set(), {}
    if len(cs) == cs.n - 1:
        cases.add(KovacsLiCase.COMPLETE)
        witnesses[KovacsLiCase.COMPLETE] = None
    wreath = reducible_decomposition(cs)
    if wreath is not None:
        cases.add(KovacsLiCase.WREATH)
        witnesses[KovacsLiCase.WREATH] = wreath
    deleted = deleted_wreath_decomposition(cs)
    if deleted is not None:
        cases.add(KovacsLiCase.DELETED_WREATH)
        witnesses[KovacsLiCase.DELETED_WREATH] = deleted
    if is_normal_circulant(cs):
        cases.add(KovacsLiCase.NORMAL)
        witnesses[KovacsLiCase.NORMAL] = None
    if not cases:
        raise AuditFailure(f"no arc-transitive case applies to {cs}")
    return KovacsLiDiagnosis(frozenset(cases), witnesses)


# -- lemma audits ------------------------------------------------------------

def generated_subgroup(k: ConnectionSet) -> tuple[int, ...]:
    """Elements of the subgroup of ``Z_n`` generated by ``k``: multiples of the gcd."""
    g = math.gcd(k.n, *k.elems)
    return tuple(range(0, k.n, g))


def subcirculant_audit(cs: ConnectionSet, k: ConnectionSet) -> bool:
    """Stabilizer of 0 preserves ``<K>`` and acts on ``Cay(<K>, K)`` by automorphisms."""
    if k.n != cs.n or not set(k.elems) <= set(cs.elems):
        raise ApplicabilityError("K is not a subset of S")
    stab = vertex_stabilizer(cs)
    try:
        stab.orbits_on_set(k.elems)
    except InvarianceError as exc:
        raise ApplicabilityError("K is not invariant under the vertex stabilizer") from exc
    sub = generated_subgroup(k)
    step = sub[1] if len(sub) > 1 else cs.n
    index = {x: i for i, x in enumerate(sub)}
    local = circulant(ConnectionSet(len(sub), tuple(s // step for s in k.elems)))
    sub_set = set(sub)
    for phi in stab.gens:
        if {phi[x] for x in sub} != sub_set:
            return False
        restricted = tuple(index[phi[x]] for x in sub)
        if relabel(local, restricted) != local:
            return False
    return True


def regular_cyclic_subgroup_census(cs: ConnectionSet, cap: int = DEFAULT_CENSUS_CAP) -> int:
    """Number of regular cyclic subgroups of ``Aut(circulant(cs))``."""
    n = cs.n
    if n == 1:
        return 1
    full_cycles = sum(
        1 for g in aut(cs).elements(cap) if (c := cycles(g)) and len(c) == 1 and len(c[0]) == n
    )
    phi = euler_phi(n)
    if full_cycles % phi:
        raise AuditFailure(f"{full_cycles} regular n-cycles is not a multiple of phi(n)={phi}")
    return full_cycles // phi


def stabilizers_coincide(group: PermutationGroup, a: int, b: int) -> bool:
    ga, gb = group.point_stabilizer(a), group.point_stabilizer(b)
    return ga.order() == gb.order() and all(gb.contains(g) for g in ga.gens)


@dataclass(frozen=True)
class KeyLemmaResult:
    case: str  # "CaseI" or "CaseII"
    witness: Optional[Decomposition] = None

    def to_json(self) -> dict:
        return {"case": self.case, "witness": self.witness.to_json() if self.witness else None}


def key_lemma_audit(cs: ConnectionSet) -> KeyLemmaResult:
    """Bipartite arc-transitive circulant of order ``2m`` (m odd), even valency.

    Case I: stabilizers of 0 and m agree. Case II: ``Gamma = Gamma1 wr K_d-bar``
    with ``Gamma1`` irreducible, arc-transitive, of even order ``2 m1`` and its
    stabilizers of 0 and ``m1`` agree. Exactly one case must hold.
    """
    n = cs.n
    g = _require_connected(cs)
    if n % 2 or (n // 2) % 2 == 0:
        raise ApplicabilityError(f"order {n} is not twice an odd number")
    if is_bipartite(g) is None:
        raise ApplicabilityError(f"{cs} is not bipartite")
    if len(cs) % 2:
        raise ApplicabilityError(f"{cs} has odd valency")
    if not is_arc_transitive(cs):
        raise ApplicabilityError(f"{cs} is not arc-transitive")
    m = n // 2
    case_one = stabilizers_coincide(aut(cs), 0, m)
    witness = reducible_decomposition(cs)
    case_two = False
    if witness is not None:
        inner = witness.quotient
        if inner.n % 2 == 0 and is_irreducible(circulant(inner)) and is_arc_transitive(inner):
            case_two = stabilizers_coincide(aut(inner), 0, inner.n // 2)
    if case_one == case_two:
        raise AuditFailure(f"key lemma: case I={case_one}, case II={case_two} for {cs}")
    return KeyLemmaResult("CaseI") if case_one else KeyLemmaResult("CaseII", witness)


def deleted_wreath_aut_check(sigma_cs: ConnectionSet, d: int) -> bool:
    """``|Aut(Sigma wr_d K_d-bar)| == |Aut(Sigma)| * d!`` for irreducible Sigma, d not dividing |Sigma|."""
    if d < 3:
        raise ApplicabilityError("d must be at least 3")
    sigma = circulant(sigma_cs)
    if not is_irreducible(sigma):
        raise ApplicabilityError("Sigma is reducible")
    if sigma_cs.n % d == 0:
        raise ApplicabilityError(f"d={d} divides |V(Sigma)|={sigma_cs.n}")
    gamma = deleted_wreath_product(sigma, d)
    return automorphism_group(gamma).order() == automorphism_group(sigma).order() * math.factorial(d)


def normal_implies_stable_audit(cs: ConnectionSet) -> bool:
    """If the double cover is a normal circulant then the base is stable."""
    if cs.n % 2 == 0:
        raise ApplicabilityError("order must be odd")
    g = _require_connected(cs)
    if not is_normal_circulant(double_cover_connection_set(cs)):
        return True
    return is_stable_by_order(g).status is Status.STABLE


def wreath_cover_order(cs: ConnectionSet) -> Optional[tuple[int, int]]:
    """``(|Aut(B(X))|, |Aut(B(Y))| * (d!)^(2|Y|))`` for reducible ``X = Y wr K_d-bar``.

    ``B(X) = B(Y) wr K_d-bar`` with ``B(Y)`` irreducible, so each of the
    ``2|Y|`` twin classes is permuted freely on top of ``Aut(B(Y))``.
    """
    dec = reducible_decomposition(cs)
    if dec is None:
        return None
    y = circulant(dec.quotient)
    actual = automorphism_group(bipartite_double_cover(circulant(cs))).order()
    predicted = automorphism_group(bipartite_double_cover(y)).order() * math.factorial(dec.d) ** (2 * y.n)
    return actual, predicted
