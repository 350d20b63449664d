"""Automorphism groups by equitable refinement and individualization.

The search follows the classic scheme: refine the unit partition, walk the
leftmost path of the search tree (individualize the minimum vertex of the first
smallest non-singleton cell) down to a discrete partition, then for each level
from the bottom up look for automorphisms fixing the path prefix and moving the
path vertex to every cell member not yet in its orbit. Nodes whose quotient
matrix differs from the path node at the same depth are pruned.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Optional

from .errors import CapacityError, ValidationError
from .graph import (
    MAX_VERTICES,
    Graph,
    Partition,
    bits_to_mask,
    complement,
    disjoint_union,
    is_automorphism,
    is_connected,
    is_isomorphism,
    iter_bits,
)
from .perm import Permutation, PermutationGroup

NAIVE_MAX_VERTICES = 8


def _refine(rows: tuple[int, ...], cells: list[int], splitters: list[int]) -> list[int]:
    """Refine ordered cells (bitmasks) until equitable w.r.t. every cell.

    Split cells are replaced in place by their parts, ordered by ascending
    neighbour count; all parts are queued as splitters. Every operation
    depends only on structure, so the result commutes with relabelling.
    """
    queue = deque(splitters)
    while queue:
        w = queue.popleft()
        out = []
        for c in cells:
            if c & (c - 1) == 0:
                out.append(c)
                continue
            buckets: dict[int, int] = {}
            for v in iter_bits(c):
                k = (rows[v] & w).bit_count()
                buckets[k] = buckets.get(k, 0) | (1 << v)
            if len(buckets) == 1:
                out.append(c)
                continue
            parts = [buckets[k] for k in sorted(buckets)]
            out.extend(parts)
            queue.extend(parts)
        cells = out
    return cells


def _signature(rows: tuple[int, ...], cells: list[int]) -> tuple:
    sig = []
    for c in cells:
        rep = rows[(c & -c).bit_length() - 1]
        sig.append((c.bit_count(), tuple((rep & d).bit_count() for d in cells)))
    return tuple(sig)


def _target_cell(cells: list[int]) -> int:
    best, best_size = -1, None
    for i, c in enumerate(cells):
        size = c.bit_count()
        if size > 1 and (best_size is None or size < best_size):
            best, best_size = i, size
    return best


def _individualize(rows, cells: list[int], index: int, v: int) -> list[int]:
    bit = 1 << v
    new = cells[:index] + [bit, cells[index] ^ bit] + cells[index + 1:]
    return _refine(rows, new, [bit])


def equitable_refinement(g: Graph, p: Partition) -> Partition:
    """Coarsest equitable partition refining ``p`` (cell order is canonical)."""
    if not p.covers(g.n):
        raise ValidationError("partition does not cover the vertex set")
    cells = [bits_to_mask(b) for b in p.blocks]
    out = _refine(g.rows, cells, list(cells))
    return Partition(tuple(tuple(iter_bits(c)) for c in out))


def is_equitable(g: Graph, p: Partition) -> bool:
    masks = [bits_to_mask(b) for b in p.blocks]
    for b in p.blocks:
        for m in masks:
            if len({(g.rows[v] & m).bit_count() for v in b}) > 1:
                return False
    return True


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.rows = g.rows
        self.gens: list[Permutation] = []
        self.nodes = 0

    def run(self) -> tuple[list[Permutation], list[int], list[int]]:
        n, rows = self.g.n, self.rows
        root = _refine(rows, [(1 << n) - 1], [(1 << n) - 1]) if n else []
        path, base = [root], []
        cur = root
        while True:
            ci = _target_cell(cur)
            if ci < 0:
                break
            v = (cur[ci] & -cur[ci]).bit_length() - 1
            base.append(v)
            cur = _individualize(rows, cur, ci, v)
            path.append(cur)
        self.path = path
        self.base = base
        self.sigs = [_signature(rows, p) for p in path]
        self.leaf = [(c & -c).bit_length() - 1 for c in cur]

        orbit_sizes = [1] * len(base)
        for level in reversed(range(len(base))):
            node = path[level]
            ci = _target_cell(node)
            orbit = self._orbit(base[level], self.gens)
            for w in iter_bits(node[ci]):
                if w in orbit:
                    continue
                child = _individualize(rows, node, ci, w)
                found = self._descend(child, level + 1, base[:level] + [w])
                if found is not None:
                    self.gens.append(found)
                    orbit = self._orbit(base[level], self.gens)
            orbit_sizes[level] = len(orbit)
        return self.gens, base, orbit_sizes

    @staticmethod
    def _orbit(v: int, gens) -> set[int]:
        seen, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for s in gens:
                y = s[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def _descend(self, cells: list[int], depth: int, prefix: list[int]) -> Optional[Permutation]:
        self.nodes += 1
        if _signature(self.rows, cells) != self.sigs[depth]:
            return None
        if depth == len(self.base):
            img = [0] * self.g.n
            for src, c in zip(self.leaf, cells):
                img[src] = (c & -c).bit_length() - 1
            img = tuple(img)
            return img if is_automorphism(self.g, img) else None
        ci = _target_cell(cells)
        # automorphisms fixing the prefix map failed branches to failed branches
        fixing = [s for s in self.gens if all(s[x] == x for x in prefix)]
        dead: set[int] = set()
        for x in iter_bits(cells[ci]):
            if x in dead:
                continue
            child = _individualize(self.rows, cells, ci, x)
            found = self._descend(child, depth + 1, prefix + [x])
            if found is not None:
                return found
            dead |= self._orbit(x, fixing)
        return None


@lru_cache(maxsize=4096)
def automorphism_group(g: Graph) -> PermutationGroup:
    """Full automorphism group of ``g`` as a permutation group with BSGS.

    Every generator is re-checked against the adjacency rows, and the BSGS
    order must equal the product of orbit lengths seen by the search.
    """
    if g.n > MAX_VERTICES:
        raise CapacityError(f"{g.n} vertices exceeds cap of {MAX_VERTICES}")
    search = _Search(g)
    gens, base, orbit_sizes = search.run()
    for s in gens:
        if not is_automorphism(g, s):
            raise AssertionError("search produced a non-automorphism")
    group = PermutationGroup(g.n, gens, base_prefix=base)
    expected = 1
    for k in orbit_sizes:
        expected *= k
    if group.order() != expected:
        raise AssertionError(f"orbit-stabilizer mismatch: BSGS {group.order()} vs search {expected}")
    return group


def naive_automorphisms(g: Graph) -> PermutationGroup:
    """Test oracle: filter all n! bijections; n <= 8."""
    if g.n > NAIVE_MAX_VERTICES:
        raise CapacityError(f"naive enumeration limited to {NAIVE_MAX_VERTICES} vertices")
    group = PermutationGroup(g.n)
    gens: list[Permutation] = []
    count = 0
    for p in itertools.permutations(range(g.n)):
        if is_automorphism(g, p):
            count += 1
            if not group.contains(p):
                gens.append(p)
                group = PermutationGroup(g.n, gens)
    if group.order() != count:
        raise AssertionError(f"naive closure mismatch: {group.order()} vs {count} automorphisms")
    return group


def find_isomorphism(g: Graph, h: Graph) -> Optional[Permutation]:
    """An isomorphism ``g -> h`` as an image tuple, or None.

    Works on the disjoint union of ``g`` and ``h`` (complemented first when
    ``g`` is disconnected, so both components are connected): the two
    graphs are isomorphic iff some automorphism carries vertex 0 into the
    ``h`` half.
    """
    if g.n != h.n or g.num_edges() != h.num_edges():
        return None
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return None
    n = g.n
    if n == 0:
        return ()
    a, b = g, h
    if not is_connected(g):
        a, b = complement(g), complement(h)
    if is_connected(a) != is_connected(b):
        return None
    union = disjoint_union(a, b)
    group = automorphism_group(union)
    target = next((x for x in sorted(group.orbit(0)) if x >= n), None)
    if target is None:
        return None
    u = group.element_mapping(0, target)
    mapping = tuple(u[v] - n for v in range(n))
    if not is_isomorphism(g, h, mapping):
        raise AssertionError("union automorphism did not restrict to an isomorphism")
    return mapping


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def clear_cache() -> None:
    automorphism_group.cache_clear()
