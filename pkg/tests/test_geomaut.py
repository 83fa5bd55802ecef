import math
import random

import numpy as np
import pytest

from eigenaut.errors import CapExceeded, ToleranceError
from eigenaut.geomaut import (
    GeometricAutomorphismList,
    list_geometric_automorphisms,
    orthogonal_extension,
    quantized_gram,
)
from eigenaut.oracle import brute_geom_aut
from eigenaut.permgroup import Permutation


def listed_images(points, cap=10**6):
    gram = quantized_gram(points)
    out = list_geometric_automorphisms(gram, cap=cap)
    return {p.image for p in out.elements}


class TestQuantizedGram:
    def test_orthonormal_pair(self):
        # keys number the product clusters in increasing value order
        g = quantized_gram(np.eye(2), gram_tol=1e-6)
        assert np.array_equal(g.keys, np.array([[1, 0], [0, 1]]))

    def test_single_origin_point(self):
        g = quantized_gram(np.zeros((1, 3)))
        assert np.array_equal(g.keys, np.array([[0]]))

    def test_symmetric_keys(self):
        rng = np.random.default_rng(42)
        pts = rng.integers(-3, 4, size=(6, 4)).astype(float)
        g = quantized_gram(pts)
        assert np.array_equal(g.keys, g.keys.T)

    def test_working_precision_pair_shares_key(self):
        # two products 2e-13 apart must merge no matter where they sit
        pts = np.array([[1.0], [1.4999999e-6], [1.5000001e-6]])
        g = quantized_gram(pts, gram_tol=1e-6)
        assert g.keys[0, 1] == g.keys[0, 2]

    def test_well_separated_pair_splits(self):
        # a 5e-8 product gap is far above the link radius: distinct keys
        pts = np.array([[1.0], [1.00e-6], [1.05e-6]])
        g = quantized_gram(pts, gram_tol=1e-6)
        assert g.keys[0, 1] != g.keys[0, 2]

    def test_chain_guard(self):
        # consecutive gaps all link but the run drifts past gram_tol/100
        pts = np.array([[1.0 + i * 4.5e-10] for i in range(15)])
        with pytest.raises(ToleranceError):
            quantized_gram(pts, gram_tol=1e-6)

    def test_lone_boundary_value_passes(self):
        # a single product near a boundary is harmless without a partner
        pts = np.array([[1.5e-6, 0.0], [1.0, 0.0]])
        g = quantized_gram(pts, gram_tol=1e-6)
        assert g.size == 2

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            quantized_gram(np.eye(2), gram_tol=-1.0)


class TestListing:
    def test_three_collinear_points(self):
        pts = np.array([[-1.0], [0.0], [1.0]])
        assert listed_images(pts) == {(0, 1, 2), (2, 1, 0)}

    def test_square_corners_dihedral(self):
        pts = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
        out = list_geometric_automorphisms(quantized_gram(pts))
        assert out.order == 8
        assert out.group.order() == 8

    def test_single_point_trivial(self):
        pts = np.array([[2.0, 0.0]])
        out = list_geometric_automorphisms(quantized_gram(pts))
        assert out.order == 1
        assert out.elements[0].is_identity()

    def test_identity_always_listed_and_closed(self):
        rng = random.Random(7)
        for _ in range(20):
            m = rng.randrange(1, 6)
            d = rng.randrange(1, 4)
            pts = np.array([[rng.randrange(-2, 3) for _ in range(d)] for _ in range(m)], dtype=float)
            out = list_geometric_automorphisms(quantized_gram(pts))
            imgs = {p.image for p in out.elements}
            assert tuple(range(m)) in imgs
            for p in out.elements:
                assert p.inverse().image in imgs
                for q in out.elements:
                    assert (p * q).image in imgs

    def test_matches_brute_force(self):
        rng = random.Random(17)
        for _ in range(200):
            m = rng.randrange(1, 7)
            d = rng.randrange(1, 4)
            pts = np.array(
                [[rng.randrange(-2, 3) for _ in range(d)] for _ in range(m)],
                dtype=float,
            )
            expect = {p.image for p in brute_geom_aut([tuple(row) for row in pts])}
            got = listed_images(pts)
            assert got == expect

    def test_uniform_keys_give_symmetric_group(self):
        pts = np.eye(4)
        out = list_geometric_automorphisms(quantized_gram(pts))
        assert out.order == 24
        assert out.group.order() == 24

    def test_cap_exceeded_on_uniform_input(self):
        pts = np.eye(12)
        with pytest.raises(CapExceeded) as exc:
            list_geometric_automorphisms(quantized_gram(pts), cap=10**6)
        assert exc.value.size == math.factorial(12)
        assert exc.value.cap == 10**6

    def test_cap_exceeded_on_structured_input(self):
        # two separated orthonormal clusters of 4: group order 24*24 = 576
        pts = np.zeros((8, 8))
        for i in range(4):
            pts[i, i] = 1.0
        for i in range(4):
            pts[4 + i, 4 + i] = 3.0
        with pytest.raises(CapExceeded):
            list_geometric_automorphisms(quantized_gram(pts), cap=100)
        out = list_geometric_automorphisms(quantized_gram(pts), cap=1000)
        assert out.order == 576

    def test_relabeling_conjugates_the_listing(self):
        rng = random.Random(29)
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        base = listed_images(pts)
        relab = [2, 0, 3, 1]
        shuffled = pts[relab]
        # point i of shuffled is point relab[i] of base
        conj = set()
        inv = [0] * 4
        for i, r in enumerate(relab):
            inv[r] = i
        for img in base:
            conj.add(tuple(inv[img[relab[i]]] for i in range(4)))
        assert listed_images(shuffled) == conj

    def test_deterministic_element_order(self):
        pts = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
        a = list_geometric_automorphisms(quantized_gram(pts))
        b = list_geometric_automorphisms(quantized_gram(pts))
        assert [p.image for p in a.elements] == [p.image for p in b.elements]
        assert [p.image for p in a.elements] == sorted(p.image for p in a.elements)


class TestOrthogonalExtension:
    def test_identity_permutation(self):
        pts = np.array([[1.0, 2.0], [3.0, -1.0]])
        a = orthogonal_extension(pts, Permutation((0, 1)))
        assert np.allclose(a, np.eye(2), atol=1e-9)

    def test_reversal_in_one_dimension(self):
        pts = np.array([[-1.0], [0.0], [1.0]])
        a = orthogonal_extension(pts, Permutation((2, 1, 0)))
        assert np.allclose(a, np.array([[-1.0]]), atol=1e-9)

    def test_square_rotation(self):
        # corners in cyclic position order: rotating by 90 degrees maps
        # (1,1)->(-1,1)->(-1,-1)->(1,-1)->(1,1)
        pts = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
        rot = Permutation((1, 2, 3, 0))
        a = orthogonal_extension(pts, rot)
        expect = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert np.allclose(a, expect, atol=1e-9)

    def test_low_rank_points_extend_with_identity_complement(self):
        # collinear points inside the plane: map acts as -1 on the line
        pts = np.array([[1.0, 1.0], [-1.0, -1.0], [0.0, 0.0]])
        a = orthogonal_extension(pts, Permutation((1, 0, 2)))
        assert np.allclose(a @ a.T, np.eye(2), atol=1e-9)
        assert np.allclose(pts @ a.T, pts[[1, 0, 2]], atol=1e-9)

    def test_false_automorphism_rejected(self):
        pts = np.array([[1.0, 0.0], [2.0, 0.0]])
        with pytest.raises(ToleranceError):
            orthogonal_extension(pts, Permutation((1, 0)))

    def test_every_listed_element_extends(self):
        rng = random.Random(23)
        for _ in range(20):
            m = rng.randrange(1, 6)
            d = rng.randrange(1, 4)
            pts = np.array(
                [[rng.randrange(-2, 3) for _ in range(d)] for _ in range(m)],
                dtype=float,
            )
            out = list_geometric_automorphisms(quantized_gram(pts))
            for p in out.elements:
                a = orthogonal_extension(pts, p, tol=1e-6)
                assert np.allclose(pts @ a.T, pts[[p(i) for i in range(m)]], atol=1e-6)
