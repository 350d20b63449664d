"""Permutations as image tuples and a deterministic Schreier-Sims engine.

A permutation ``p`` of degree ``n`` is a tuple with ``p[i]`` the image of ``i``.
Composition follows function notation: ``compose(p, q)(x) == p(q(x))``.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, ContainmentError, InvarianceError, ValidationError

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def perm(images: Iterable[int]) -> Permutation:
    """Validate and freeze an image array."""
    p = tuple(int(i) for i in images)
    if sorted(p) != list(range(len(p))):
        raise ValidationError(f"not a permutation: {p}")
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    if len(p) != len(q):
        raise ValidationError(f"degree mismatch: {len(p)} vs {len(q)}")
    return _mul(p, q)


def _mul(p: Permutation, q: Permutation) -> Permutation:
    """``compose`` without the degree check, for the inner loops."""
    return tuple(map(p.__getitem__, q))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_identity(p: Permutation) -> bool:
    return all(i == j for i, j in enumerate(p))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Non-trivial cycles, each starting at its smallest point."""
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> list[int]:
    """Sorted cycle lengths including fixed points."""
    lengths = [len(c) for c in cycles(p)]
    fixed = len(p) - sum(lengths)
    return sorted(lengths + [1] * fixed)


def from_cycles(n: int, *cycs: Sequence[int]) -> Permutation:
    img = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + type(c)(c[:1])):
            img[a] = b
    return perm(img)


def order_of(p: Permutation) -> int:
    from math import lcm
    return lcm(*(len(c) for c in cycles(p))) if not is_identity(p) else 1


def _first_moved(p: Permutation) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    raise ValueError("identity moves no point")


def _sift(p: Permutation, base, inverse_transversals, start: int = 0) -> tuple[Permutation, int]:
    """Strip ``p`` through levels ``start..``; return residue and failing level.

    ``inverse_transversals[level][beta]`` is the inverse of the coset rep
    carrying the base point of that level to ``beta``.
    """
    for level in range(start, len(base)):
        u_inv = inverse_transversals[level].get(p[base[level]])
        if u_inv is None:
            return p, level
        p = _mul(u_inv, p)
    return p, len(base)


def _extend_transversal(trans: dict, inv: dict, gens: list[Permutation]) -> None:
    """Close the orbit in ``trans`` under ``gens``, keeping existing coset reps.

    ``inv`` mirrors ``trans`` with inverted reps.
    """
    frontier = list(trans)
    # re-scan old points: a newly added generator may leave the orbit from any of them
    while frontier:
        nxt = []
        for beta in frontier:
            u = trans[beta]
            for s in gens:
                gamma = s[beta]
                if gamma not in trans:
                    rep = _mul(s, u)
                    trans[gamma] = rep
                    inv[gamma] = inverse(rep)
                    nxt.append(gamma)
        frontier = nxt


class PermutationGroup:
    """Group given by generators, with a base and strong generating set.

    Base points are chosen as the lowest point moved by the first generator
    not fixing the current base, after an optional caller-supplied prefix.
    """

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (), base_prefix: Sequence[int] = ()):
        self.degree = degree
        clean = []
        for g in gens:
            g = tuple(g)
            if len(g) != degree:
                raise ValidationError(f"generator of degree {len(g)} in group of degree {degree}")
            if not is_identity(g) and g not in clean:
                clean.append(g)
        self.gens: tuple[Permutation, ...] = tuple(clean)
        for b in base_prefix:
            if not 0 <= b < degree:
                raise ValidationError(f"base point {b} out of range")
        self._schreier_sims(list(base_prefix))
        self._stabilizers: dict[int, PermutationGroup] = {}

    def _schreier_sims(self, base: list[int]) -> None:
        strong = list(self.gens)
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(_first_moved(g))
        level_gens = [[s for s in strong if all(s[b] == b for b in base[:i])] for i in range(len(base))]
        trans, inv = [], []
        for i, b in enumerate(base):
            t, ti = {b: identity(self.degree)}, {b: identity(self.degree)}
            _extend_transversal(t, ti, level_gens[i])
            trans.append(t)
            inv.append(ti)
        checked: list[set] = [set() for _ in base]

        i = len(base) - 1
        while i >= 0:
            found = None
            for beta in list(trans[i]):
                u = trans[i][beta]
                for s in level_gens[i]:
                    key = (beta, s)
                    if key in checked[i]:
                        continue
                    schreier = _mul(inv[i][s[beta]], _mul(s, u))
                    h, j = _sift(schreier, base, inv, i + 1)
                    if is_identity(h):
                        checked[i].add(key)
                        continue
                    found = (h, j)
                    break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            h, j = found
            if j == len(base):
                b = _first_moved(h)
                base.append(b)
                level_gens.append([])
                trans.append({b: identity(self.degree)})
                inv.append({b: identity(self.degree)})
                checked.append(set())
            for level in range(i + 1, j + 1):
                level_gens[level].append(h)
                _extend_transversal(trans[level], inv[level], level_gens[level])
            i = j

        self.base: tuple[int, ...] = tuple(base)
        self.strong_gens: tuple[Permutation, ...] = tuple(
            dict.fromkeys(itertools.chain(self.gens, *level_gens))
        )
        self._level_gens = [tuple(lg) for lg in level_gens]
        self._transversals = trans
        self._inverse_transversals = inv

    # -- queries ---------------------------------------------------------

    def order(self) -> int:
        out = 1
        for t in self._transversals:
            out *= len(t)
        return out

    def basic_orbit_lengths(self) -> list[int]:
        return [len(t) for t in self._transversals]

    def _check_degree(self, p: Sequence[int]) -> None:
        if len(p) != self.degree:
            raise ValidationError(f"permutation of degree {len(p)} vs group degree {self.degree}")

    def contains(self, p: Sequence[int]) -> bool:
        self._check_degree(p)
        h, _ = _sift(tuple(p), self.base, self._inverse_transversals)
        return is_identity(h)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self.gens

    def orbit(self, v: int) -> frozenset[int]:
        if not 0 <= v < self.degree:
            raise ValidationError(f"point {v} out of range")
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for g in self.gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def orbits(self) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for v in range(self.degree):
            if v not in seen:
                o = self.orbit(v)
                seen |= o
                out.append(tuple(sorted(o)))
        return out

    def orbits_on_set(self, s: Iterable[int]) -> list[tuple[int, ...]]:
        """Orbits inside ``s``; ``s`` must be a union of orbits."""
        s = set(s)
        for x in s:
            if not 0 <= x < self.degree:
                raise ValidationError(f"point {x} out of range")
        for g in self.gens:
            if {g[x] for x in s} != s:
                raise InvarianceError("set is not invariant under the group")
        out, seen = [], set()
        for x in sorted(s):
            if x not in seen:
                o = self.orbit(x)
                seen |= o
                out.append(tuple(sorted(o)))
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def element_mapping(self, v: int, w: int) -> Optional[Permutation]:
        """Some group element sending ``v`` to ``w``, or None."""
        if w not in self.orbit(v):
            return None
        rebased = PermutationGroup(self.degree, self.strong_gens, base_prefix=(v,))
        return rebased._transversals[0][w]

    def point_stabilizer(self, v: int) -> "PermutationGroup":
        """Subgroup fixing ``v``, obtained by re-basing the BSGS at ``v``."""
        if not 0 <= v < self.degree:
            raise ValidationError(f"point {v} out of range")
        if v not in self._stabilizers:
            rebased = PermutationGroup(self.degree, self.strong_gens, base_prefix=(v,))
            lower = rebased._level_gens[1] if len(rebased.base) > 1 else ()
            self._stabilizers[v] = PermutationGroup(self.degree, lower, base_prefix=rebased.base[1:])
        return self._stabilizers[v]

    def is_central_element(self, p: Sequence[int]) -> bool:
        self._check_degree(p)
        p = tuple(p)
        return all(compose(p, g) == compose(g, p) for g in self.gens)

    def is_subgroup(self, h: "PermutationGroup") -> bool:
        return h.degree == self.degree and all(self.contains(g) for g in h.gens)

    def is_normal_subgroup(self, h: "PermutationGroup") -> bool:
        if h.degree != self.degree:
            raise ValidationError("degree mismatch")
        if not self.is_subgroup(h):
            raise ContainmentError("subgroup generator outside the ambient group")
        for a in self.gens:
            a_inv = inverse(a)
            for b in h.gens:
                if not h.contains(compose(a, compose(b, a_inv))):
                    return False
        return True

    def same_group(self, other: "PermutationGroup") -> bool:
        return self.order() == other.order() and other.is_subgroup(self)

    def elements(self, cap: int) -> Iterator[Permutation]:
        """Every element exactly once, as products of coset representatives."""
        if self.order() > cap:
            raise CapacityError(f"group order {self.order()} exceeds enumeration cap {cap}")
        return self._iter_elements()

    def _iter_elements(self) -> Iterator[Permutation]:
        if not self._transversals:
            yield identity(self.degree)
            return
        for reps in itertools.product(*(t.values() for t in self._transversals)):
            g = reps[-1]
            for u in reversed(reps[:-1]):
                g = compose(u, g)
            yield g

    def to_json(self) -> dict:
        return {"degree": self.degree, "gens": [list(g) for g in self.gens], "order": str(self.order())}

    @classmethod
    def from_json(cls, data: dict | str) -> "PermutationGroup":
        if isinstance(data, str):
            data = json.loads(data)
        g = cls(int(data["degree"]), [perm(x) for x in data["gens"]])
        if "order" in data and str(g.order()) != str(data["order"]):
            raise ValidationError(f"recorded order {data['order']} != computed {g.order()}")
        return g

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={self.order()}, gens={len(self.gens)})"


def build_group(gens: Iterable[Sequence[int]], degree: Optional[int] = None, base_prefix: Sequence[int] = ()) -> PermutationGroup:
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            degree = 0
        else:
            degree = len(gens[0])
    return PermutationGroup(degree, gens, base_prefix)


def symmetric_group(n: int) -> PermutationGroup:
    if n < 2:
        return PermutationGroup(n)
    return PermutationGroup(n, [from_cycles(n, (0, 1)), tuple((i + 1) % n for i in range(n))])


def cyclic_rotation(n: int, step: int = 1) -> Permutation:
    return tuple((i + step) % n for i in range(n))


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of the n-gon: rotation x -> x+1 and reflection x -> -x."""
    return PermutationGroup(n, [cyclic_rotation(n), tuple((-i) % n for i in range(n))])
