"""Permutation algebra and group machinery against naive enumeration."""

import random

import pytest

from eigenaut.permgroup import (
    ListedProduct,
    Permutation,
    PermutationCoset,
    PermutationGroup,
    ProductPermutation,
    build_group,
    coset_union,
    group_order,
    orbit_with_witness,
    pointwise_stabilizer,
    restricted_coset_intersection,
    stabilizer_in_coset,
)
from eigenaut.oracle import brute_coset_meet, coset_elements

from _util import (
    all_images,
    close_images,
    group_images,
    random_perm_images,
    random_subgroup_images,
)


def perm(*cycles, n):
    return Permutation.from_cycles(cycles, n)


class TestPermutation:
    def test_compose_transpositions_gives_three_cycle(self):
        p = perm([0, 1], n=3)
        q = perm([1, 2], n=3)
        r = p * q
        assert r.image == (2, 0, 1)
        assert len(r.cycles()) == 1 and len(r.cycles()[0]) == 3

    def test_composition_order_is_left_then_right(self):
        p = perm([0, 1], n=3)
        q = perm([1, 2], n=3)
        assert (p * q).apply(0) == q.apply(p.apply(0))

    def test_inverse_and_identity(self):
        p = perm([0, 1, 2], n=4)
        assert (p * p.inverse()).is_identity()
        assert Permutation.identity(4).is_identity()
        assert p.inverse().apply(1) == 0

    def test_induced_set_action(self):
        p = perm([0, 1], n=3)
        assert p.of_set(frozenset({0, 2})) == frozenset({1, 2})
        assert p.of_tuple((0, 2)) == (1, 2)

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1])

    def test_cycle_string_round_trip(self):
        p = perm([0, 2], [1, 3, 4], n=5)
        s = p.cycle_string()
        assert s == "(1 3)(2 4 5)"
        assert Permutation.from_cycle_string(s, 5) == p
        assert Permutation.from_cycle_string("()", 3).is_identity()

    def test_cycle_string_zero_based(self):
        p = perm([0, 1], n=2)
        assert p.cycle_string(one_based=False) == "(0 1)"
        assert Permutation.from_cycle_string("(0 1)", 2, one_based=False) == p


class TestBuildGroup:
    def test_symmetric_group_four(self):
        g = build_group([perm([0, 1], n=4), perm([0, 1, 2, 3], n=4)])
        assert group_order(g) == 24
        assert group_images(g) == set(all_images(4))

    def test_trivial_group_from_no_generators(self):
        g = build_group([], degree=3)
        assert g.order() == 1
        assert g.contains(Permutation.identity(3))

    def test_cyclic_and_klein(self):
        c6 = build_group([perm([0, 1, 2, 3, 4, 5], n=6)])
        assert c6.order() == 6
        klein = build_group([perm([0, 1], n=4) * perm([2, 3], n=4),
                             perm([0, 2], n=4) * perm([1, 3], n=4)])
        assert klein.order() == 4

    def test_orders_match_closure_on_random_generators(self):
        rng = random.Random(42)
        for _ in range(40):
            degree = rng.randint(2, 8)
            gens_img = random_perm_images(rng, degree, rng.randint(1, 3))
            want = close_images(gens_img, degree)
            g = build_group([Permutation(im) for im in gens_img])
            assert g.order() == len(want)
            assert group_images(g) == want

    def test_contains_random_words_and_outsiders(self):
        rng = random.Random(7)
        for _ in range(20):
            degree = rng.randint(3, 7)
            gens_img = random_perm_images(rng, degree, 2)
            elems = close_images(gens_img, degree)
            g = build_group([Permutation(im) for im in gens_img])
            word = Permutation.identity(degree)
            for _ in range(rng.randint(0, 6)):
                word = word * Permutation(rng.choice(gens_img))
            assert g.contains(word)
            for im in random_perm_images(rng, degree, 5):
                assert g.contains(Permutation(im)) == (im in elems)

    def test_deterministic_construction(self):
        gens = [perm([0, 3], [1, 2], n=5), perm([0, 1, 2], n=5)]
        g1 = build_group(gens)
        g2 = build_group(gens)
        assert g1.base == g2.base
        assert [sorted(t) for t in g1.transversals] == [sorted(t) for t in g2.transversals]
        assert [p.image for p in g1.strong_generators] == [p.image for p in g2.strong_generators]

    def test_strong_generator_count_stays_small(self):
        import math
        rng = random.Random(3)
        for _ in range(25):
            degree = rng.randint(2, 8)
            gens_img = random_perm_images(rng, degree, rng.randint(1, 4))
            g = build_group([Permutation(im) for im in gens_img])
            assert len(g.strong_generators) <= degree * max(1.0, math.log2(degree))

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            build_group([perm([0, 1], n=3), perm([0, 1], n=4)])


class TestOrbitsAndStabilizers:
    def test_orbit_with_witness_points(self):
        g = build_group([perm([0, 1, 2, 3], n=4)])
        orb = orbit_with_witness(g, 0)
        assert set(orb) == {0, 1, 2, 3}
        for target, w in orb.items():
            assert w.apply(0) == target

    def test_orbit_of_a_set(self):
        g = build_group([perm([0, 1, 2], n=4)])
        orb = orbit_with_witness(g, frozenset({0, 3}))
        assert set(orb) == {frozenset({0, 3}), frozenset({1, 3}), frozenset({2, 3})}

    def test_orbit_stabilizer_identity(self):
        rng = random.Random(11)
        for _ in range(20):
            degree = rng.randint(3, 8)
            gens_img = random_perm_images(rng, degree, 2)
            g = build_group([Permutation(im) for im in gens_img])
            x = rng.randrange(degree)
            orb = orbit_with_witness(g, x)
            stab = pointwise_stabilizer(g, [x])
            assert len(orb) * stab.order() == g.order()

    def test_pointwise_stabilizer_matches_filter(self):
        g = build_group([perm([0, 1], n=4), perm([0, 1, 2, 3], n=4)])
        stab0 = pointwise_stabilizer(g, [0])
        assert stab0.order() == 6
        assert group_images(stab0) == {im for im in all_images(4) if im[0] == 0}
        stab01 = pointwise_stabilizer(g, [0, 1])
        assert stab01.order() == 2
        assert pointwise_stabilizer(g, []) is g


class TestStabilizerInCoset:
    def test_point_stabilizer_inside_group_coset(self):
        s3 = build_group([perm([0, 1], n=3), perm([0, 1, 2], n=3)])
        coset = PermutationCoset(s3, Permutation.identity(3))
        fixed = stabilizer_in_coset(coset, 0, 0)
        assert fixed.size() == 2
        assert all(im[0] == 0 for im in coset_elements(fixed))

    def test_transposition_coset_single_element(self):
        h = build_group([perm([0, 1], n=2)])
        coset = PermutationCoset(h, Permutation.identity(2))
        moved = stabilizer_in_coset(coset, 0, 1)
        assert moved.size() == 1
        assert coset_elements(moved) == {(1, 0)}

    def test_unreachable_target_gives_empty(self):
        h = build_group([perm([0, 1], n=3)])
        coset = PermutationCoset(h, Permutation.identity(3))
        assert stabilizer_in_coset(coset, 0, 2).empty

    def test_empty_propagates(self):
        assert stabilizer_in_coset(PermutationCoset.empty_coset(), 0, 0).empty

    def test_matches_filtered_enumeration(self):
        rng = random.Random(5)
        for _ in range(30):
            degree = rng.randint(3, 6)
            sub = random_subgroup_images(rng, degree, 60)
            gens = [Permutation(im) for im in sub]
            g = build_group(gens)
            rep = Permutation(rng.choice(random_perm_images(rng, degree, 1)))
            coset = PermutationCoset(g, rep)
            alpha = rng.randrange(degree)
            beta = rng.randrange(degree)
            got = stabilizer_in_coset(coset, alpha, beta)
            want = {im for im in coset_elements(coset) if im[alpha] == beta}
            assert coset_elements(got) == want


class TestCosetUnion:
    def test_union_of_cosets_recovers_symmetric_group(self):
        h = build_group([perm([0, 1], n=3)])
        reps = [Permutation.identity(3), perm([0, 2], n=3), perm([1, 2], n=3)]
        union = coset_union([PermutationCoset(h, r) for r in reps])
        assert union.size() == 6

    def test_idempotent_on_single_coset(self):
        h = build_group([perm([0, 1], n=3)])
        c = PermutationCoset(h, perm([1, 2], n=3))
        u = coset_union([c, PermutationCoset.empty_coset(), c])
        assert coset_elements(u) == coset_elements(c)

    def test_all_empty(self):
        assert coset_union([PermutationCoset.empty_coset()]).empty

    def test_random_coset_partitions(self):
        rng = random.Random(13)
        for _ in range(15):
            degree = rng.randint(3, 5)
            sub = random_subgroup_images(rng, degree, 24)
            h = build_group([Permutation(im) for im in sub])
            full = set(all_images(degree))
            cosets = []
            covered = set()
            for im in sorted(full):
                if im in covered:
                    continue
                c = PermutationCoset(h, Permutation(im))
                covered |= coset_elements(c)
                cosets.append(c)
            union = coset_union(cosets)
            assert coset_elements(union) == full


def dense_from_locals(classes, locals_, degree):
    """Global permutation acting as the given local images on each class."""
    image = list(range(degree))
    for points, elem in zip(classes, locals_):
        for pos, x in enumerate(points):
            image[x] = points[elem[pos]]
    return Permutation(image)


def random_product_setup(rng, max_group=24):
    """Random disjoint color classes with listed groups on each."""
    num_colors = rng.randint(1, 3)
    classes = []
    start = 0
    for _ in range(num_colors):
        size = rng.randint(1, 4)
        classes.append(tuple(range(start, start + size)))
        start += size
    listed = [random_subgroup_images(rng, len(pts), max_group) for pts in classes]
    degree = start
    return classes, listed, degree


def random_product_element(rng, classes, listed, degree):
    return dense_from_locals(classes, [rng.choice(g) for g in listed], degree)


class TestListedProduct:
    def test_product_element_matches_dense(self):
        rng = random.Random(17)
        for _ in range(20):
            classes, listed, degree = random_product_setup(rng)
            system = ListedProduct(list(zip(classes, listed)))
            d1 = random_product_element(rng, classes, listed, degree)
            d2 = random_product_element(rng, classes, listed, degree)
            p1 = system.perm_from_global(d1)
            p2 = system.perm_from_global(d2)
            assert system.to_dense(p1 * p2) == d1 * d2
            assert system.to_dense(p1.inverse()) == d1.inverse()
            for x in range(degree):
                assert p1.apply(x) == d1.apply(x)

    def test_rejects_cross_class_and_unlisted(self):
        system = ListedProduct([((0, 1), [(0, 1), (1, 0)]), ((2, 3), [(0, 1)])])
        with pytest.raises(ValueError):
            system.perm_from_global(Permutation((2, 3, 0, 1)))
        with pytest.raises(ValueError):
            system.perm_from_global(Permutation((0, 1, 3, 2)))

    def test_requires_identity_and_inverses(self):
        with pytest.raises(ValueError):
            ListedProduct([((0, 1), [(1, 0)])])
        with pytest.raises(ValueError):
            ListedProduct([((0, 1, 2), [(0, 1, 2), (1, 2, 0)])])


class TestRestrictedCosetIntersection:
    def test_full_products_intersect_to_full_product(self):
        colors = [((0, 1), [(0, 1), (1, 0)]), ((2, 3), [(0, 1), (1, 0)])]
        gens = [dense_from_locals([c[0] for c in colors], loc, 4)
                for loc in ([(1, 0), (0, 1)], [(0, 1), (1, 0)])]
        h = build_group(gens)
        ident = Permutation.identity(4)
        got = restricted_coset_intersection(h, ident, h, ident, colors)
        assert got.size() == 4

    def test_disjoint_singletons_empty(self):
        colors = [((0, 1), [(0, 1), (1, 0)])]
        triv = build_group([], degree=2)
        got = restricted_coset_intersection(
            triv, perm([0, 1], n=2), triv, Permutation.identity(2), colors
        )
        assert got.empty

    def test_matches_brute_meet(self):
        rng = random.Random(23)
        for _ in range(60):
            classes, listed, degree = random_product_setup(rng)
            colors = list(zip(classes, listed))
            gens1 = [random_product_element(rng, classes, listed, degree)
                     for _ in range(rng.randint(0, 2))]
            gens2 = [random_product_element(rng, classes, listed, degree)
                     for _ in range(rng.randint(0, 2))]
            h1 = build_group(gens1, degree=degree)
            h2 = build_group(gens2, degree=degree)
            p1 = random_product_element(rng, classes, listed, degree)
            p2 = random_product_element(rng, classes, listed, degree)
            c1 = PermutationCoset(h1, p1)
            c2 = PermutationCoset(h2, p2)
            got = restricted_coset_intersection(h1, p1, h2, p2, colors)
            want = brute_coset_meet(c1, c2)
            assert coset_elements(got) == want

    def test_product_permutation_io(self):
        rng = random.Random(29)
        for _ in range(15):
            classes, listed, degree = random_product_setup(rng)
            system = ListedProduct(list(zip(classes, listed)))
            to_pp = system.perm_from_global
            gens1 = [to_pp(random_product_element(rng, classes, listed, degree))
                     for _ in range(rng.randint(0, 2))]
            gens2 = [to_pp(random_product_element(rng, classes, listed, degree))
                     for _ in range(rng.randint(0, 2))]
            p1 = to_pp(random_product_element(rng, classes, listed, degree))
            p2 = to_pp(random_product_element(rng, classes, listed, degree))
            h1 = build_group(gens1, identity=system.identity_perm())
            h2 = build_group(gens2, identity=system.identity_perm())
            got = restricted_coset_intersection(h1, p1, h2, p2, system)
            assert got.empty or isinstance(got.representative, ProductPermutation)
            dense1 = build_group([system.to_dense(g) for g in gens1], degree=degree)
            dense2 = build_group([system.to_dense(g) for g in gens2], degree=degree)
            want = brute_coset_meet(
                PermutationCoset(dense1, system.to_dense(p1)),
                PermutationCoset(dense2, system.to_dense(p2)),
            )
            if got.empty:
                assert want == set()
            else:
                dense_got = PermutationCoset(
                    build_group([system.to_dense(g) for g in got.group.generators],
                                degree=degree),
                    system.to_dense(got.representative),
                )
                assert coset_elements(dense_got) == want

    def test_rejects_unlisted_restriction(self):
        colors = [((0, 1, 2), [(0, 1, 2), (1, 2, 0), (2, 0, 1)])]
        h = build_group([perm([0, 1], n=3)])
        with pytest.raises(ValueError):
            restricted_coset_intersection(
                h, Permutation.identity(3), h, Permutation.identity(3), colors
            )
