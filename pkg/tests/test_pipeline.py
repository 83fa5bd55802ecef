import math
import random

import numpy as np
import pytest

from eigenaut.errors import CapExceeded
from eigenaut.geomaut import list_geometric_automorphisms, quantized_gram
from eigenaut.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    petersen_graph,
    random_graph,
    star_graph,
)
from eigenaut.oracle import brute_aut, brute_iso
from eigenaut.pipeline import (
    automorphism_group,
    geom_aut_instance,
    isomorphic,
    isomorphism_witness,
    lift_to_vertex_group,
    reduce_to_hypaut,
)
from eigenaut.pointset import project_all


def build_instance(graph):
    pset, dec = geom_aut_instance(graph)
    projections = project_all(pset, dec)
    auts = [
        list_geometric_automorphisms(
            quantized_gram(p.distinct_points), space_index=p.space_index
        )
        for p in projections
    ]
    return pset, dec, projections, auts


class TestGeomAutInstance:
    def test_k2_shape(self):
        pset, dec = geom_aut_instance(complete_graph(2))
        assert pset.size == 3
        assert len(dec.spaces) == 2

    def test_double_k2_multiplicities(self):
        g = complete_graph(2).disjoint_union(complete_graph(2))
        pset, dec = geom_aut_instance(g)
        assert pset.size == 6
        assert dec.multiplicities() == (2, 2)
        assert dec.eigenvalues() == pytest.approx((1.0, -1.0))

    def test_edgeless_single_space(self):
        pset, dec = geom_aut_instance(empty_graph(3))
        assert pset.size == 3
        assert len(dec.spaces) == 1
        assert dec.spaces[0].multiplicity == 3


class TestReduceToHypaut:
    def test_single_space_singleton_hyperedges(self):
        g = empty_graph(3)
        pset, dec, projections, auts = build_instance(g)
        hyp = reduce_to_hypaut(pset, projections, auts)
        assert hyp.num_colors == 1
        assert all(len(next(iter(t for t in trace))) == 1 for trace in hyp.edges)
        assert len(hyp.edges) == 3

    def test_k3_two_colors_six_hyperedges(self):
        g = complete_graph(3)
        pset, dec, projections, auts = build_instance(g)
        hyp = reduce_to_hypaut(pset, projections, auts)
        assert hyp.num_colors == 2
        assert len(hyp.edges) == 6
        for trace in hyp.edges:
            assert [len(part) for part in trace] == [1, 1]

    def test_shared_fiber_vertices(self):
        # in K_2's positive eigenspace both vertex points share one fiber,
        # so their hyperedges agree on color 0 and differ on color 1
        g = complete_graph(2)
        pset, dec, projections, auts = build_instance(g)
        hyp = reduce_to_hypaut(pset, projections, auts)
        plus = projections[0]
        assert plus.fiber_of[0] == plus.fiber_of[1]
        assert len(hyp.edges) == 3
        k0 = projections[0].size
        edge_of = {}
        for i in range(pset.size):
            edge_of[i] = (
                projections[0].fiber_of[i],
                k0 + projections[1].fiber_of[i],
            )
        assert edge_of[0][0] == edge_of[1][0]
        assert edge_of[0][1] != edge_of[1][1]
        assert ((edge_of[0][0],), (edge_of[0][1],)) in hyp.edges


class TestLift:
    def test_k2_lifts_to_full_swap_group(self):
        g = complete_graph(2)
        pset, dec, projections, auts = build_instance(g)
        hyp = reduce_to_hypaut(pset, projections, auts)
        from eigenaut.hypaut import hyp_aut_product

        product_group, system = hyp_aut_product(hyp)
        gens = lift_to_vertex_group(product_group, system, pset, projections, g.n)
        from eigenaut.permgroup import Permutation, build_group

        group = build_group(gens, identity=Permutation.identity(2))
        assert group.order() == 2

    def test_k3_order_six(self):
        out = automorphism_group(complete_graph(3))
        assert out.order == 6
        assert out.verified


class TestAutomorphismGroup:
    def test_p4_order_two(self):
        out = automorphism_group(path_graph(4))
        assert out.order == 2
        assert out.verified

    def test_c5_order_ten(self):
        out = automorphism_group(cycle_graph(5))
        assert out.order == 10

    def test_petersen_order_120(self):
        out = automorphism_group(petersen_graph())
        assert out.order == 120
        assert out.verified
        assert tuple(m for _, m in out.spectrum) == (1, 5, 4)

    def test_generators_are_exact_automorphisms(self):
        rng = random.Random(19)
        for _ in range(15):
            g = random_graph(rng.randrange(1, 8), 0.5, rng)
            out = automorphism_group(g)
            a = g.adjacency()
            for p in out.generators():
                img = [p(i) for i in range(g.n)]
                assert np.array_equal(a[np.ix_(img, img)], a)

    def test_matches_brute_force_small(self):
        rng = random.Random(43)
        for _ in range(40):
            g = random_graph(rng.randrange(1, 8), rng.choice([0.2, 0.5, 0.8]), rng)
            out = automorphism_group(g)
            assert out.order == len(brute_aut(g))
            assert out.verified

    def test_named_graph_orders(self):
        for n in range(4, 9):
            assert automorphism_group(cycle_graph(n)).order == 2 * n
        for n in range(3, 9):
            out = automorphism_group(path_graph(n))
            assert out.order == 2
            assert all(m == 1 for _, m in out.spectrum)
        for n in range(3, 7):
            assert automorphism_group(complete_graph(n)).order == math.factorial(n)

    def test_edgeless_six_vertices(self):
        out = automorphism_group(empty_graph(6))
        assert out.order == 720
        assert out.verified

    def test_edgeless_twelve_cap_exceeded(self):
        with pytest.raises(CapExceeded) as exc:
            automorphism_group(empty_graph(12))
        assert exc.value.cap == 10**6
        assert "multiplicity" in str(exc.value)

    def test_empty_and_singleton(self):
        assert automorphism_group(Graph(0, [])).order == 1
        assert automorphism_group(Graph(1, [])).order == 1
        assert automorphism_group(Graph(2, [])).order == 2


class TestIsomorphic:
    def test_relabeled_graphs_give_verified_witness(self):
        rng = random.Random(3)
        for _ in range(15):
            n = rng.randrange(1, 9)
            g = random_graph(n, 0.4, rng)
            perm = list(range(n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            out = isomorphic(g, h)
            assert out.isomorphic
            w = out.witness
            for u, v in g.edges:
                assert h.has_edge(w(u), w(v))

    def test_cospectral_pair_rejected_in_full_pipeline(self):
        g = cycle_graph(4).disjoint_union(empty_graph(1))
        h = star_graph(4)
        out = isomorphic(g, h)
        assert not out.isomorphic
        assert out.reason == "no balanced component orbit matching"
        assert brute_iso(g, h) is None

    def test_precheck_reasons(self):
        assert isomorphic(path_graph(3), path_graph(4)).reason == "vertex counts differ"
        assert isomorphic(path_graph(3), empty_graph(3)).reason == "edge counts differ"
        out = isomorphic(path_graph(4), star_graph(3))
        assert out.reason == "adjacency spectra differ"

    def test_spectrum_precheck_never_rejects_isomorphic(self):
        rng = random.Random(23)
        for _ in range(20):
            n = rng.randrange(1, 8)
            g = random_graph(n, 0.5, rng)
            perm = list(range(n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            out = isomorphic(g, h)
            assert out.isomorphic
            assert out.reason is None

    def test_decision_matches_brute_force(self):
        rng = random.Random(29)
        for _ in range(25):
            n = rng.randrange(1, 7)
            g = random_graph(n, 0.5, rng)
            h = random_graph(n, 0.5, rng)
            expect = brute_iso(g, h) is not None
            out = isomorphic(g, h)
            assert out.isomorphic == expect
            if expect:
                assert out.witness is not None

    def test_symmetric_decision(self):
        rng = random.Random(47)
        for _ in range(10):
            n = rng.randrange(1, 7)
            g = random_graph(n, 0.5, rng)
            h = random_graph(n, 0.5, rng)
            assert isomorphic(g, h).isomorphic == isomorphic(h, g).isomorphic

    def test_witness_helper(self):
        g = cycle_graph(5)
        h = g.relabel([2, 0, 4, 1, 3])
        w = isomorphism_witness(g, h)
        assert w is not None
        assert isomorphism_witness(g, path_graph(5)) is None

    def test_disconnected_multi_component_matching(self):
        g = cycle_graph(3).disjoint_union(cycle_graph(4)).disjoint_union(empty_graph(2))
        perm = list(range(g.n))
        random.Random(7).shuffle(perm)
        h = g.relabel(perm)
        out = isomorphic(g, h)
        assert out.isomorphic
        for u, v in g.edges:
            assert h.has_edge(out.witness(u), out.witness(v))
