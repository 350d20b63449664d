import pytest
from hypothesis import given

from circstab.errors import ApplicabilityError, AuditFailure
from circstab.graph import (
    ConnectionSet,
    Graph,
    bipartite_double_cover,
    circulant,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    is_automorphism,
    is_bipartite,
    is_connected,
)
from circstab.stability import (
    Reason,
    StabilityVerdict,
    Status,
    classify,
    is_stable_by_order,
    is_stable_by_stabilizer,
    is_stable_by_tau_central,
    recover_base_graphs,
    sheet_swap,
    stability_criteria,
    strongly_switching_involutions,
    worthiness_check,
)
from oracles import backtrack_automorphisms, brute_isomorphism, compose, naive_automorphism_list
from strategies import connection_sets, graphs

C5 = cycle_graph(5)
K3 = complete_graph(3)
K333 = circulant(ConnectionSet(9, (1, 2, 4, 5, 7, 8)))
C9 = circulant(ConnectionSet(9, (1, 8)))


def circ(n, *s):
    return circulant(ConnectionSet(n, s))


class TestVerdict:
    def test_invariants_enforced(self):
        with pytest.raises(AuditFailure):
            StabilityVerdict(Status.STABLE, Reason.NONE, 10, 30)
        with pytest.raises(AuditFailure):
            StabilityVerdict(Status.NONTRIVIALLY_UNSTABLE, Reason.REDUCIBLE, 10, 40)

    def test_json(self):
        v = StabilityVerdict(Status.STABLE, Reason.NONE, 10, 20)
        assert v.to_json() == {"status": "Stable", "reason": "none", "autX": "10", "autBX": "20"}
        assert StabilityVerdict.from_json(v.to_json()) == v


class TestByOrder:
    def test_c5(self):
        v = is_stable_by_order(C5)
        assert (v.status, v.aut_x_order, v.aut_bx_order) == (Status.STABLE, 10, 20)
        # orders by the naive oracle
        assert len(naive_automorphism_list(C5)) == 10
        assert len(backtrack_automorphisms(bipartite_double_cover(C5))) == 20

    def test_k3(self):
        v = is_stable_by_order(K3)
        assert (v.status, v.aut_x_order, v.aut_bx_order) == (Status.STABLE, 6, 12)
        assert len(naive_automorphism_list(bipartite_double_cover(K3))) == 12

    def test_k333_unstable(self):
        v = is_stable_by_order(K333)
        assert v.status is Status.TRIVIALLY_UNSTABLE and v.reason is Reason.REDUCIBLE
        assert v.aut_bx_order > 2 * v.aut_x_order

    def test_not_applicable(self):
        assert is_stable_by_order(cycle_graph(4)).status is Status.NOT_APPLICABLE

    @given(graphs(max_n=8))
    def test_cover_contains_product(self, x):
        v = is_stable_by_order(x)
        assert v.aut_bx_order >= 2 * v.aut_x_order or x.n == 0


class TestTauCentral:
    def test_values(self):
        assert is_stable_by_tau_central(C5)
        assert is_stable_by_tau_central(C9)
        assert not is_stable_by_tau_central(K333)

    def test_k333_explicit_witness(self):
        from circstab.autgroup import automorphism_group

        b = bipartite_double_cover(K333)
        tau = sheet_swap(9)
        gens = automorphism_group(b).gens
        assert any(compose(tau, g) != compose(g, tau) for g in gens)

    def test_c5_swap_is_half_turn(self):
        # under (x, i) -> 2x + 5i the sheet swap becomes x -> x + 5 on C10
        alpha = [(2 * x + 5 * i) % 10 for i in (0, 1) for x in range(5)]
        tau = sheet_swap(5)
        assert all(alpha[tau[v]] == (alpha[v] + 5) % 10 for v in range(10))

    def test_preconditions(self):
        with pytest.raises(ApplicabilityError):
            is_stable_by_tau_central(cycle_graph(6))
        with pytest.raises(ApplicabilityError):
            is_stable_by_tau_central(circ(6, 2, 4))


class TestStabilizer:
    def test_values(self):
        assert is_stable_by_stabilizer(C5)
        assert is_stable_by_stabilizer(C9)
        assert not is_stable_by_stabilizer(K333)

    def test_requires_vertex_transitive(self):
        # triangle with a pendant vertex: connected, not bipartite, not vertex-transitive
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        with pytest.raises(ApplicabilityError):
            is_stable_by_stabilizer(g)

    def test_k333_brute_force(self):
        # some automorphism fixes (0,0) and moves (0,1)
        b = bipartite_double_cover(K333)
        from circstab.autgroup import automorphism_group

        stab0 = automorphism_group(b).point_stabilizer(0)
        assert any(g[9] != 9 for g in stab0.gens)

    @given(connection_sets(max_n=14))
    def test_three_criteria_agree(self, cs):
        votes = stability_criteria(circulant(cs))
        if votes is not None:
            assert len(set(votes)) == 1


class TestClassify:
    def test_examples(self):
        v = classify(circ(6, 2, 4))
        assert (v.status, v.reason) == (Status.TRIVIALLY_UNSTABLE, Reason.DISCONNECTED)
        v = classify(circ(4, 1, 3))
        assert (v.status, v.reason, v.aut_x_order) == (Status.TRIVIALLY_UNSTABLE, Reason.BIPARTITE_NONTRIVIAL_AUT, 8)
        v = classify(circ(6, 1, 2, 4, 5))
        assert (v.status, v.reason) == (Status.TRIVIALLY_UNSTABLE, Reason.REDUCIBLE)

    def test_rigid_bipartite_not_applicable(self):
        # smallest asymmetric tree has 7 vertices
        tree = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])
        v = classify(tree)
        assert v.aut_x_order == 1
        assert (v.status, v.reason) == (Status.NOT_APPLICABLE, Reason.BIPARTITE)

    def test_nontrivially_unstable_even_circulant(self):
        v = classify(circ(8, 1, 3, 4, 5, 7))
        assert v.status is Status.NONTRIVIALLY_UNSTABLE and v.reason is Reason.NONE

    @given(graphs(max_n=8))
    def test_trivial_reasons(self, x):
        v = classify(x)
        if v.status is Status.STABLE:
            assert is_connected(x) and is_bipartite(x) is None
        if v.status is Status.NONTRIVIALLY_UNSTABLE:
            assert v.aut_bx_order > 2 * v.aut_x_order


class TestSwitchingInvolutions:
    def test_c6(self):
        assert strongly_switching_involutions(cycle_graph(6)) == [(3, 4, 5, 0, 1, 2)]
        # oracle: filter all automorphisms by hand
        autos = naive_automorphism_list(cycle_graph(6))
        ident = tuple(range(6))
        hits = [
            a for a in autos
            if a != ident and compose(a, a) == ident and all(a[v] % 2 != v % 2 for v in range(6))
            and all({a[u], a[(u + 1) % 6]} != {u, (u + 1) % 6} for u in range(6))
        ]
        assert hits == [(3, 4, 5, 0, 1, 2)]

    def test_c4_has_none(self):
        assert strongly_switching_involutions(cycle_graph(4)) == []

    def test_disconnected_rejected(self):
        with pytest.raises(ApplicabilityError):
            strongly_switching_involutions(bipartite_double_cover(complete_graph(2)))

    def test_nonbipartite_rejected(self):
        with pytest.raises(ApplicabilityError):
            strongly_switching_involutions(C5)

    def test_recover(self):
        [(g, x)] = recover_base_graphs(cycle_graph(6))
        assert g == (3, 4, 5, 0, 1, 2) and x == K3
        [(g, x)] = recover_base_graphs(cycle_graph(10))
        assert g == tuple((v + 5) % 10 for v in range(10)) and brute_isomorphism(x, C5) is not None
        assert recover_base_graphs(cycle_graph(4)) == []

    @given(connection_sets(min_n=3, max_n=7))
    def test_recovered_bases_cover(self, cs):
        x = circulant(cs)
        if not is_connected(x) or is_bipartite(x) is not None:
            return
        y = bipartite_double_cover(x)
        pairs = recover_base_graphs(y)
        assert pairs, "a double cover always has the sheet swap"
        for g, base in pairs:
            assert is_automorphism(y, g)
            assert brute_isomorphism(bipartite_double_cover(base), y) is not None


class TestWorthiness:
    def test_values(self):
        assert worthiness_check(C5)
        assert worthiness_check(complete_multipartite(2, 2, 2))
        assert worthiness_check(empty_graph(2))

    def test_lone_isolated_vertex(self):
        # the two copies of an isolated vertex are twins in the cover
        assert not worthiness_check(complete_graph(1))

    @given(graphs())
    def test_true_without_isolated_vertices(self, x):
        if all(x.degree(v) for v in range(x.n)):
            assert worthiness_check(x)
