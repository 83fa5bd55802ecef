import itertools
import random

import pytest

from eigenaut.hypaut import (
    ColoredMultiHypergraph,
    IsoTable,
    block_isomorphisms,
    build_blocks,
    compute_S_ell,
    hyp_aut,
    hyp_aut_product,
    instance_from_json,
    instance_to_json,
    stage0,
)
from eigenaut.oracle import brute_hyp_aut, coset_elements
from eigenaut.permgroup import Permutation

S2 = [(0, 1), (1, 0)]
S3 = [tuple(p) for p in itertools.permutations(range(3))]
ID2 = [(0, 1)]
ID1 = [(0,)]


def dense_coset_images(hyp, coset):
    """Element set of a product coset as global image tuples."""
    if coset.empty:
        return set()
    from eigenaut.permgroup import PermutationCoset, build_group

    sys = hyp.system
    n = hyp.degree
    gens = [sys.to_dense(g, n) for g in coset.group.generators]
    group = build_group(gens, identity=Permutation.identity(n))
    dense = PermutationCoset(group, sys.to_dense(coset.representative, n))
    return coset_elements(dense)


def images_of(group, degree):
    """Full element set of a small group as global image tuples."""
    seen = {tuple(range(degree))}
    frontier = [tuple(range(degree))]
    gens = [tuple(g.apply(x) for x in range(degree)) for g in group.generators]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


class TestBuildBlocks:
    def setup_method(self):
        # 2 colors: V1 = {0, 1}, V2 = {2, 3}; edges {0,2},{1,2},{0,3}
        self.hyp = ColoredMultiHypergraph(
            [[0, 1], [2, 3]], [S2, S2], [[0, 2], [1, 2], [0, 3]]
        )

    def test_top_level_single_block(self):
        blocks = build_blocks(self.hyp, 2)
        assert len(blocks) == 1
        assert blocks[0].key == ()
        assert blocks[0].size == 3

    def test_level_zero_one_block_per_edge(self):
        blocks = build_blocks(self.hyp, 0)
        assert len(blocks) == 3
        for b in blocks:
            assert len(b.members) == 1
            assert b.members[0][1] == 1

    def test_mid_level_split_by_later_traces(self):
        blocks = build_blocks(self.hyp, 1)
        keyed = {b.key: {t for t, _ in b.members} for b in blocks}
        assert keyed == {
            ((2,),): {((0,), (2,)), ((1,), (2,))},
            ((3,),): {((0,), (3,))},
        }

    def test_multiplicities_aggregate(self):
        hyp = ColoredMultiHypergraph(
            [[0, 1]], [S2], [([0], 2), [0], [1]]
        )
        blocks = build_blocks(hyp, 0)
        mults = sorted(b.size for b in blocks)
        assert mults == [1, 3]


class TestStage0:
    def test_multiplicity_mismatch_empty(self):
        hyp = ColoredMultiHypergraph([[0, 1]], [S2], [([0], 2), ([1], 3)])
        blocks = build_blocks(hyp, 0)
        out = stage0(blocks[0], blocks[1], hyp)
        assert out.empty

    def test_trivial_group_identity(self):
        hyp = ColoredMultiHypergraph([[0]], [ID1], [[0]])
        b = build_blocks(hyp, 0)[0]
        out = stage0(b, b, hyp)
        assert not out.empty
        assert out.size() == 1
        assert out.representative.is_identity()

    def test_s3_singleton_traces(self):
        hyp = ColoredMultiHypergraph([[0, 1, 2]], [S3], [[0], [1]])
        blocks = build_blocks(hyp, 0)
        a = next(b for b in blocks if b.members[0][0] == ((0,),))
        b = next(bl for bl in blocks if bl.members[0][0] == ((1,),))
        out = stage0(a, b, hyp)
        # stabilizer of {0} in S3 has order 2; representative moves 0 to 1
        assert out.size() == 2
        assert out.representative.apply(0) == 1
        imgs = dense_coset_images(hyp, out)
        assert imgs == {(1, 0, 2), (1, 2, 0)}


class TestComputeSell:
    def test_identity_included_when_sets_match(self):
        hyp = ColoredMultiHypergraph([[0, 1]], [S2], [[0], [1]])
        taus = compute_S_ell([(0,), (1,)], [(0,), (1,)], hyp, 0)
        hats = {tau.apply(0): hat for tau, hat in taus}
        assert hats[0] == (0, 1)
        assert hats[1] == (1, 0)

    def test_trivial_group_set_mismatch_empty(self):
        hyp = ColoredMultiHypergraph([[0, 1]], [ID2], [[0], [1]])
        assert compute_S_ell([(0,)], [(1,)], hyp, 0) == []

    def test_swap_example_both_elements(self):
        # V = {x, y} = {0, 1}, a-traces ({x}, {y}), b-traces ({y}, {x})
        hyp = ColoredMultiHypergraph([[0, 1]], [S2], [[0], [1]])
        taus = compute_S_ell([(0,), (1,)], [(1,), (0,)], hyp, 0)
        hats = {tau.apply(0): hat for tau, hat in taus}
        # identity sends {x} to {x} = b-trace index 1; swap sends it to index 0
        assert hats[0] == (1, 0)
        assert hats[1] == (0, 1)

    def test_count_mismatch_empty(self):
        hyp = ColoredMultiHypergraph([[0, 1]], [S2], [[0]])
        assert compute_S_ell([(0,)], [(0,), (1,)], hyp, 0) == []


class TestHypAut:
    def test_all_trivial_groups(self):
        hyp = ColoredMultiHypergraph([[0], [1]], [ID1, ID1], [[0, 1]])
        group = hyp_aut(hyp)
        assert group.order() == 1

    def test_singletons_with_s3_full_group(self):
        hyp = ColoredMultiHypergraph([[0, 1, 2]], [S3], [[0], [1], [2]])
        group = hyp_aut(hyp)
        assert group.order() == 6

    def test_edge_multiset_breaks_symmetry(self):
        # edges {0},{0},{1}: only elements fixing 0 survive
        hyp = ColoredMultiHypergraph([[0, 1, 2]], [S3], [([0], 2), [1]])
        group = hyp_aut(hyp)
        assert group.order() == 1

    def test_no_hyperedges_full_product(self):
        hyp = ColoredMultiHypergraph([[0, 1], [2, 3]], [S2, S2], [])
        group, system = hyp_aut_product(hyp)
        assert group.order() == 4

    def test_two_color_matching_instance(self):
        # a perfect pairing between two S2 colors halves the product
        hyp = ColoredMultiHypergraph(
            [[0, 1], [2, 3]], [S2, S2], [[0, 2], [1, 3]]
        )
        group = hyp_aut(hyp)
        assert group.order() == 2
        expect = brute_hyp_aut([[0, 1], [2, 3]], [S2, S2], [((0, 2), 1), ((1, 3), 1)])
        assert images_of(group, 4) == expect


def random_instance(rng, max_colors=3, max_class=5, max_group=24):
    classes = []
    groups = []
    start = 0
    for _ in range(rng.randrange(1, max_colors + 1)):
        size = rng.randrange(1, max_class + 1)
        points = list(range(start, start + size))
        start += size
        elems = random_listed_group(rng, size, max_group)
        classes.append(points)
        groups.append(elems)
    verts = list(range(start))
    edges = []
    for _ in range(rng.randrange(0, 6)):
        k = rng.randrange(1, min(4, len(verts)) + 1)
        edge = rng.sample(verts, k)
        edges.append((edge, rng.randrange(1, 3)))
    return classes, groups, edges


def random_listed_group(rng, size, max_group):
    """Inverse-closed, closed, identity-containing subgroup by closure."""
    ident = tuple(range(size))
    for _ in range(30):
        k = rng.randrange(0, 3)
        gens = []
        for _ in range(k):
            img = list(range(size))
            rng.shuffle(img)
            gens.append(tuple(img))
        elems = {ident}
        frontier = [ident]
        ok = True
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[x] for x in p)
                    if q not in elems:
                        if len(elems) >= max_group:
                            ok = False
                            break
                        elems.add(q)
                        nxt.append(q)
                if not ok:
                    break
            if not ok:
                break
            frontier = nxt
        if ok:
            return sorted(elems)
    return [ident]


class TestAgainstBrute:
    def test_random_instances_match_brute_filter(self):
        rng = random.Random(31)
        for _ in range(60):
            classes, groups, edges = random_instance(rng)
            hyp = ColoredMultiHypergraph(classes, groups, edges)
            group = hyp_aut(hyp)
            expect = brute_hyp_aut(classes, groups, [(e, m) for e, m in edges])
            got = images_of(group, hyp.degree)
            assert got == expect

    def test_generators_fix_multiset_and_stay_listed(self):
        rng = random.Random(37)
        for _ in range(30):
            classes, groups, edges = random_instance(rng)
            hyp = ColoredMultiHypergraph(classes, groups, edges)
            group, system = hyp_aut_product(hyp)
            for g in group.generators:
                moved = {}
                for trace, mult in hyp.edges.items():
                    verts = [x for part in trace for x in part]
                    key = hyp.canonical_trace(g.of_tuple(verts))
                    moved[key] = moved.get(key, 0) + mult
                assert moved == hyp.edges
                # per-color restriction is one of the listed elements
                system.perm_from_global(g)


class TestBlockIsomorphisms:
    def test_nonequal_fingerprints_empty(self):
        hyp = ColoredMultiHypergraph([[0, 1]], [S2], [[0], ([1], 2)])
        blocks = build_blocks(hyp, 0)
        out = block_isomorphisms(hyp, blocks[0], blocks[1])
        assert out.empty

    def test_matches_explicit_iso_enumeration(self):
        rng = random.Random(41)
        for _ in range(25):
            classes, groups, edges = random_instance(rng, max_colors=2, max_class=4, max_group=8)
            hyp = ColoredMultiHypergraph(classes, groups, edges)
            r = hyp.num_colors
            blocks = build_blocks(hyp, r)
            if not blocks:
                continue
            top = blocks[0]
            coset = block_isomorphisms(hyp, top, top)
            got = dense_coset_images(hyp, coset) if not coset.empty else set()
            expect = brute_hyp_aut(classes, groups, [(e, m) for e, m in edges])
            assert got == expect

    def test_symmetric_pairs_invert(self):
        hyp = ColoredMultiHypergraph([[0, 1, 2]], [S3], [[0], [1]])
        blocks = build_blocks(hyp, 1)
        a, b = blocks[0], blocks[0]
        table = IsoTable(hyp)
        ab = table.entry(blocks[0], blocks[0])
        assert not ab.empty


class TestJsonRoundTrip:
    def test_round_trip(self):
        hyp = ColoredMultiHypergraph(
            [[0, 1, 2], [3, 4]], [S3, S2], [([0, 3], 2), [1, 4], [2]]
        )
        text = instance_to_json(hyp)
        back = instance_from_json(text)
        assert back.system.classes == hyp.system.classes
        assert back.system.elements == hyp.system.elements
        assert back.edges == hyp.edges

    def test_cycle_notation_is_one_based(self):
        hyp = ColoredMultiHypergraph([[5, 6]], [S2], [[5]])
        text = instance_to_json(hyp)
        assert "(1 2)" in text
