import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circstab.errors import CapacityError, ValidationError
from circstab.graph import (
    ConnectionSet,
    Graph,
    Partition,
    bipartite_double_cover,
    circulant,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    deleted_wreath_product,
    empty_graph,
    is_automorphism,
    is_bipartite,
    is_connected,
    is_irreducible,
    neighborhood_partition,
    path_graph,
    quotient_graph,
    wreath_product,
)
from oracles import adjacency, brute_isomorphism
from strategies import connection_sets, graphs

K2 = complete_graph(2)
K3 = complete_graph(3)
C5 = cycle_graph(5)
C6 = cycle_graph(6)
OCTAHEDRON = complete_multipartite(2, 2, 2)
K33 = complete_multipartite(3, 3)


def iso(g, h):
    return brute_isomorphism(g, h) is not None


class TestConnectionSet:
    def test_sorted_and_deduplicated(self):
        assert ConnectionSet(7, (6, 1, 1)).elems == (1, 6)

    @pytest.mark.parametrize("n,elems", [(5, (1,)), (5, (0, 1, 4)), (5, (1, 4, 7)), (0, ())])
    def test_rejects_invalid(self, n, elems):
        with pytest.raises(ValidationError):
            ConnectionSet(n, elems)

    def test_involution_element_is_self_inverse(self):
        assert ConnectionSet(6, (3,)).elems == (3,)

    def test_json_roundtrip(self):
        cs = ConnectionSet(9, (8, 1))
        assert cs.to_json() == {"n": 9, "set": [1, 8]}
        assert ConnectionSet.from_json(json.dumps(cs.to_json())) == cs


class TestGraph:
    def test_rejects_asymmetric_rows(self):
        with pytest.raises(ValidationError):
            Graph(2, (0b10, 0))

    def test_rejects_loops(self):
        with pytest.raises(ValidationError):
            Graph.from_edges(3, [(1, 1)])

    def test_vertex_cap(self):
        with pytest.raises(CapacityError):
            empty_graph(129)

    def test_json_format(self):
        g = Graph.from_edges(4, [(3, 2), (0, 1), (2, 0)])
        assert g.to_json() == {"n": 4, "edges": [[0, 1], [0, 2], [2, 3]]}
        assert Graph.from_json(g.to_json()) == g

    def test_json_rejects_bad_edges(self):
        with pytest.raises(ValidationError):
            Graph.from_json({"n": 3, "edges": [[0, 5]]})
        with pytest.raises(ValidationError):
            Graph.from_json({"edges": []})

    @given(graphs())
    def test_json_roundtrip(self, g):
        assert Graph.from_json(json.dumps(g.to_json())) == g


class TestCirculant:
    def test_c5(self):
        g = circulant(ConnectionSet(5, (1, 4)))
        assert g.num_edges() == 5
        assert g == C5

    def test_k5(self):
        g = circulant(ConnectionSet(5, (1, 2, 3, 4)))
        assert g.num_edges() == 10
        assert g == complete_graph(5)

    def test_octahedron(self):
        g = circulant(ConnectionSet(6, (1, 2, 4, 5)))
        assert g.num_edges() == 12
        assert iso(g, OCTAHEDRON)

    @given(connection_sets())
    def test_adjacency_rule(self, cs):
        g = circulant(cs)
        for u in range(cs.n):
            for v in range(cs.n):
                assert g.has_edge(u, v) == ((v - u) % cs.n in cs.elems)

    @given(connection_sets())
    def test_rotation_is_automorphism(self, cs):
        assert is_automorphism(circulant(cs), tuple((i + 1) % cs.n for i in range(cs.n)))


class TestDoubleCover:
    def test_k3_gives_c6(self):
        assert iso(bipartite_double_cover(K3), C6)

    def test_k2_gives_two_edges(self):
        b = bipartite_double_cover(K2)
        assert b.edges() == [(0, 3), (1, 2)]

    def test_c5_gives_c10(self):
        assert iso(bipartite_double_cover(C5), cycle_graph(10))

    def test_encoding(self):
        b = bipartite_double_cover(path_graph(3))
        # (0,0)-(1,1), (1,0)-(0,1), (1,0)-(2,1), (2,0)-(1,1)
        assert b.edges() == [(0, 4), (1, 3), (1, 5), (2, 4)]

    @given(graphs())
    def test_bipartite_and_connectivity(self, x):
        b = bipartite_double_cover(x)
        parts = is_bipartite(b)
        assert parts is not None
        if x.num_edges():
            assert set(parts.blocks[0]) | set(parts.blocks[1]) == set(range(2 * x.n))
        expected = is_connected(x) and is_bipartite(x) is None
        if x.n >= 1:
            assert is_connected(b) == expected

    @given(graphs(max_n=6))
    def test_deleted_wreath_two_copies(self, x):
        assert iso(deleted_wreath_product(x, 2), bipartite_double_cover(x))

    @given(graphs(max_n=7))
    def test_antipodal_quotient(self, x):
        n = x.n
        antipodal = Partition(tuple((v, v + n) for v in range(n)))
        assert quotient_graph(bipartite_double_cover(x), antipodal) == x


class TestWreath:
    def test_k2_wr_empty3(self):
        assert iso(wreath_product(K2, empty_graph(3)), K33)

    def test_k3_wr_empty2(self):
        assert iso(wreath_product(K3, empty_graph(2)), OCTAHEDRON)

    def test_trivial_inner(self):
        assert wreath_product(C5, empty_graph(1)) == C5

    def test_formal_rule(self):
        sigma, gamma = path_graph(3), path_graph(2)
        w = wreath_product(sigma, gamma)
        m = gamma.n
        for a in range(w.n):
            for b in range(w.n):
                (u1, u2), (v1, v2) = divmod(a, m), divmod(b, m)
                want = sigma.has_edge(u1, v1) or (u1 == v1 and gamma.has_edge(u2, v2))
                assert w.has_edge(a, b) == want

    def test_deleted_c5_2_is_c10(self):
        assert iso(deleted_wreath_product(C5, 2), cycle_graph(10))

    def test_deleted_d1_is_edgeless(self):
        assert deleted_wreath_product(C5, 1) == empty_graph(5)

    def test_deleted_c5_3(self):
        g = deleted_wreath_product(C5, 3)
        assert g.n == 15
        assert all(g.degree(v) == 4 for v in range(15))

    def test_deleted_rejects_zero(self):
        with pytest.raises(ValidationError):
            deleted_wreath_product(C5, 0)

    def test_deleted_formal_rule(self):
        d = 3
        g = deleted_wreath_product(C5, d)
        for a in range(g.n):
            for b in range(g.n):
                (u, i), (v, j) = divmod(a, d), divmod(b, d)
                assert g.has_edge(a, b) == (C5.has_edge(u, v) and i != j)


class TestQuotient:
    def test_c6_antipodal(self):
        p = Partition(((0, 3), (1, 4), (2, 5)))
        assert quotient_graph(C6, p) == K3

    @given(graphs())
    def test_singletons_identity(self, g):
        assert quotient_graph(g, Partition.discrete(g.n)) == g

    def test_k4_halves(self):
        assert quotient_graph(complete_graph(4), Partition(((0, 1), (2, 3)))) == K2

    def test_internal_edges_dropped(self):
        assert quotient_graph(complete_graph(3), Partition(((0, 1, 2),))) == empty_graph(1)

    def test_invalid_partition(self):
        with pytest.raises(ValidationError):
            quotient_graph(C6, Partition(((0, 1),)))
        with pytest.raises(ValidationError):
            Partition(((0, 1), (1, 2)))


class TestPredicates:
    def test_c5(self):
        assert is_connected(C5)
        assert is_bipartite(C5) is None

    def test_two_triangles(self):
        assert not is_connected(circulant(ConnectionSet(6, (2, 4))))

    def test_c6_bipartition(self):
        assert is_bipartite(C6).blocks == ((0, 2, 4), (1, 3, 5))

    def test_class_of_zero_first(self):
        g = Graph.from_edges(4, [(1, 0), (1, 2), (3, 2)])
        assert is_bipartite(g).blocks[0][0] == 0

    def test_neighborhood_partitions(self):
        assert neighborhood_partition(C5) == Partition.discrete(5)
        assert is_irreducible(C5)
        assert neighborhood_partition(OCTAHEDRON).blocks == ((0, 1), (2, 3), (4, 5))
        assert neighborhood_partition(K33).blocks == ((0, 1, 2), (3, 4, 5))
        antiprism = circulant(ConnectionSet(6, (1, 2, 4, 5)))
        assert neighborhood_partition(antiprism).blocks == ((0, 3), (1, 4), (2, 5))

    @given(graphs())
    def test_neighborhood_partition_pairwise(self, g):
        adj = adjacency(g)
        block = neighborhood_partition(g).block_of()
        for u in range(g.n):
            for v in range(g.n):
                assert (block[u] == block[v]) == (adj[u] == adj[v])

    @given(st.integers(3, 20))
    def test_cycle_parity(self, n):
        assert (is_bipartite(cycle_graph(n)) is not None) == (n % 2 == 0)
