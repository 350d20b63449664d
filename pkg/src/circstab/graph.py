"""Simple undirected graphs stored as per-vertex bitset rows.

Row ``rows[u]`` is a Python int whose bit ``v`` is set iff ``{u, v}`` is an
edge. Products use row-major vertex encodings:

* double cover:      ``(v, i) -> v + n*i``
* wreath product:    ``(u1, u2) -> u1*|V(gamma)| + u2``
* deleted wreath:    ``(u1, i) -> u1*d + i``
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapacityError, ValidationError

MAX_VERTICES = 128


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"negative vertex count {self.n}")
        if self.n > MAX_VERTICES:
            raise CapacityError(f"{self.n} vertices exceeds cap of {MAX_VERTICES}")
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.n:
            raise ValidationError(f"expected {self.n} rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(rows):
            if row & ~full or row < 0:
                raise ValidationError(f"row {u} has bits outside the vertex range")
            if row >> u & 1:
                raise ValidationError(f"loop at vertex {u}")
            for v in iter_bits(row):
                if not rows[v] >> u & 1:
                    raise ValidationError(f"adjacency not symmetric at ({u}, {v})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValidationError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def is_regular(self) -> bool:
        return len({r.bit_count() for r in self.rows}) <= 1

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            edges = [tuple(int(x) for x in e) for e in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad graph JSON: {exc}") from exc
        if any(len(e) != 2 for e in edges):
            raise ValidationError("every edge must have exactly two endpoints")
        return cls.from_edges(n, edges)


@dataclass(frozen=True)
class ConnectionSet:
    """Inverse-closed subset of Z_n minus 0."""

    n: int
    elems: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"modulus must be positive, got {self.n}")
        elems = tuple(sorted({int(s) for s in self.elems}))
        for s in elems:
            if not 0 <= s < self.n:
                raise ValidationError(f"residue {s} outside 0..{self.n - 1}")
        if 0 in elems:
            raise ValidationError("connection set contains 0")
        eset = set(elems)
        for s in elems:
            if (self.n - s) % self.n not in eset:
                raise ValidationError(f"not inverse-closed: {s} present, {self.n - s} missing")
        object.__setattr__(self, "elems", elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, s: object) -> bool:
        return s in self.elems

    def mask(self) -> int:
        return bits_to_mask(self.elems)

    def to_json(self) -> dict:
        return {"n": self.n, "set": list(self.elems)}

    @classmethod
    def from_json(cls, data: dict | str) -> "ConnectionSet":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["n"]), tuple(int(s) for s in data["set"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad connection set JSON: {exc}") from exc

    def __str__(self) -> str:
        return f"Z{self.n}{{{','.join(map(str, self.elems))}}}"


@dataclass(frozen=True)
class Partition:
    """Ordered list of disjoint nonempty blocks; each block sorted."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(int(v) for v in b)) for b in self.blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValidationError("empty block in partition")
            for v in b:
                if v < 0:
                    raise ValidationError(f"negative vertex {v}")
                if v in seen:
                    raise ValidationError(f"vertex {v} appears in two blocks")
                seen.add(v)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def unit(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),) if n else ())

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple((v,) for v in range(n)))

    def __len__(self) -> int:
        return len(self.blocks)

    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def covers(self, n: int) -> bool:
        return self.size() == n and all(v < n for b in self.blocks for v in b)

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}


# -- constructions -----------------------------------------------------------

def circulant(cs: ConnectionSet) -> Graph:
    n = cs.n
    full = (1 << n) - 1
    base = cs.mask()
    rows = []
    for u in range(n):
        # rotate the connection mask left by u
        rows.append(((base << u) | (base >> (n - u))) & full if u else base)
    return Graph(n, tuple(rows))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << u) for u in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(*sizes: int) -> Graph:
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    n = len(part)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ r ^ (1 << u) for u, r in enumerate(g.rows)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, g.rows + tuple(r << g.n for r in h.rows))


def relabel(g: Graph, mapping: Sequence[int]) -> Graph:
    """Image of ``g`` under the vertex bijection ``u -> mapping[u]``."""
    n = g.n
    if sorted(mapping) != list(range(n)):
        raise ValidationError("relabelling is not a bijection on the vertex set")
    rows = [0] * n
    for u in range(n):
        rows[mapping[u]] = bits_to_mask(mapping[v] for v in iter_bits(g.rows[u]))
    return Graph(n, tuple(rows))


def is_isomorphism(g: Graph, h: Graph, mapping: Sequence[int]) -> bool:
    """True iff ``u -> mapping[u]`` is an isomorphism from ``g`` onto ``h``."""
    if g.n != h.n or len(mapping) != g.n or sorted(mapping) != list(range(g.n)):
        return False
    return relabel(g, mapping) == h


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    if len(perm) != g.n:
        return False
    rows = g.rows
    for u in range(g.n):
        image = 0
        for v in iter_bits(rows[u]):
            image |= 1 << perm[v]
        if image != rows[perm[u]]:
            return False
    return True


def bipartite_double_cover(x: Graph) -> Graph:
    """X x K2 with ``(v, i)`` encoded as ``v + n*i``."""
    n = x.n
    return Graph(2 * n, tuple(r << n for r in x.rows) + x.rows)


def wreath_product(sigma: Graph, gamma: Graph) -> Graph:
    """Lexicographic product: copy of ``gamma`` substituted for each vertex of ``sigma``."""
    m = gamma.n
    block = (1 << m) - 1
    rows = []
    for u1 in range(sigma.n):
        outer = 0
        for v1 in iter_bits(sigma.rows[u1]):
            outer |= block << (v1 * m)
        for u2 in range(m):
            rows.append(outer | gamma.rows[u2] << (u1 * m))
    return Graph(sigma.n * m, tuple(rows))


def deleted_wreath_product(sigma: Graph, d: int) -> Graph:
    """Vertices ``(u, i)`` for ``i`` in Z_d; adjacent iff ``u ~ v`` in sigma and ``i != j``."""
    if d < 1:
        raise ValidationError(f"d must be positive, got {d}")
    block = (1 << d) - 1
    rows = []
    for u1 in range(sigma.n):
        outer = 0
        for v1 in iter_bits(sigma.rows[u1]):
            outer |= block << (v1 * d)
        for i in range(d):
            mask = 0
            for v1 in iter_bits(sigma.rows[u1]):
                mask |= 1 << (v1 * d + i)
            rows.append(outer ^ mask)
    return Graph(sigma.n * d, tuple(rows))


def quotient_graph(y: Graph, p: Partition) -> Graph:
    """Graph on the blocks of ``p``; blocks adjacent iff some cross edge exists.

    Edges inside a block are dropped, so the result is always loop-free.
    """
    if not p.covers(y.n):
        raise ValidationError("partition does not cover the vertex set exactly")
    masks = [bits_to_mask(b) for b in p.blocks]
    reach = []
    for b in p.blocks:
        r = 0
        for v in b:
            r |= y.rows[v]
        reach.append(r)
    k = len(masks)
    rows = [0] * k
    for a in range(k):
        for b in range(k):
            if a != b and reach[a] & masks[b]:
                rows[a] |= 1 << b
    return Graph(k, tuple(rows))


# -- predicates --------------------------------------------------------------

def _component_mask(g: Graph, start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return _component_mask(g, 0) == (1 << g.n) - 1


def components(g: Graph) -> list[tuple[int, ...]]:
    left = (1 << g.n) - 1
    out = []
    while left:
        start = (left & -left).bit_length() - 1
        comp = _component_mask(g, start)
        out.append(tuple(iter_bits(comp)))
        left &= ~comp
    return out


def is_bipartite(g: Graph) -> Optional[Partition]:
    """Two-colouring by BFS, or None for graphs with an odd cycle.

    The class containing vertex 0 comes first; each component's smallest
    vertex gets colour 0. Edgeless graphs yield a single block, since
    partitions have no empty blocks.
    """
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in iter_bits(g.rows[u]):
                if colour[v] < 0:
                    colour[v] = colour[u] ^ 1
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    classes = [tuple(v for v in range(g.n) if colour[v] == c) for c in (0, 1)]
    return Partition(tuple(c for c in classes if c))


def neighborhood_partition(g: Graph) -> Partition:
    """Classes of vertices with identical open neighbourhoods, ordered by minimum."""
    classes: dict[int, list[int]] = {}
    for v, row in enumerate(g.rows):
        classes.setdefault(row, []).append(v)
    return Partition(tuple(sorted((tuple(c) for c in classes.values()), key=lambda b: b[0])))


def is_irreducible(g: Graph) -> bool:
    return len(set(g.rows)) == g.n
