import math
import random

import numpy as np
import pytest

from eigenaut.errors import JacobiConvergenceError
from eigenaut.graphs import (
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    random_graph,
)
from eigenaut.spectral import (
    decompose_adjacency,
    default_eig_tol,
    eigendecompose,
    group_eigenvalues,
    max_multiplicity,
    sorted_eigenvalues,
    spectra_match,
)

from _exact import eigenvalue_multiplicity


class TestEigendecompose:
    def test_k2_eigenpairs(self):
        a = complete_graph(2).adjacency()
        w, v, sweeps, off = eigendecompose(a)
        assert sorted(np.round(w, 10)) == [-1.0, 1.0]
        assert np.allclose(v @ np.diag(w) @ v.T, a, atol=1e-12)
        assert sweeps >= 1
        assert off <= 1e-12 * 2

    def test_diagonal_input_needs_no_sweeps(self):
        a = np.diag([3.0, 1.0, -2.0])
        w, v, sweeps, off = eigendecompose(a)
        assert sweeps == 0
        assert off == 0.0
        assert np.array_equal(np.sort(w), np.array([-2.0, 1.0, 3.0]))
        assert np.array_equal(v, np.eye(3))

    def test_matches_library_eigenvalues(self):
        rng = random.Random(42)
        for _ in range(20):
            n = rng.randrange(2, 13)
            g = random_graph(n, 0.5, rng)
            a = g.adjacency()
            w, v, _, _ = eigendecompose(a)
            ref = np.linalg.eigvalsh(np.asarray(a, dtype=np.float64))
            assert np.allclose(np.sort(w), ref, atol=1e-9)
            assert np.allclose(v @ np.diag(w) @ v.T, a, atol=1e-9)
            assert np.allclose(v.T @ v, np.eye(n), atol=1e-9)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            eigendecompose(np.array([[0.0, 1.0], [0.5, 0.0]]))
        with pytest.raises(ValueError):
            eigendecompose(np.zeros((2, 3)))

    def test_sweep_limit_raises(self):
        a = complete_graph(2).adjacency()
        with pytest.raises(JacobiConvergenceError):
            eigendecompose(a, max_sweeps=0)


class TestGrouping:
    def test_k2_projectors(self):
        dec = decompose_adjacency(complete_graph(2).adjacency())
        assert dec.multiplicities() == (1, 1)
        assert np.allclose(dec.eigenvalues(), [1.0, -1.0], atol=1e-10)
        # eigenvector for -1 is (1,-1)/sqrt(2) up to sign, projector is fixed
        p_neg = dec.spaces[1].projector
        assert np.allclose(p_neg, np.array([[0.5, -0.5], [-0.5, 0.5]]), atol=1e-10)

    def test_c4_multiplicities(self):
        dec = decompose_adjacency(cycle_graph(4).adjacency())
        assert dec.multiplicities() == (1, 2, 1)
        assert np.allclose(dec.eigenvalues(), [2.0, 0.0, -2.0], atol=1e-9)
        assert max_multiplicity(dec) == 2

    def test_p4_all_simple(self):
        dec = decompose_adjacency(path_graph(4).adjacency())
        assert dec.multiplicities() == (1, 1, 1, 1)
        expect = sorted((2 * math.cos(k * math.pi / 5) for k in range(1, 5)), reverse=True)
        assert np.allclose(dec.eigenvalues(), expect, atol=1e-9)

    def test_petersen_multiplicities(self):
        g = petersen_graph()
        dec = decompose_adjacency(g.adjacency())
        assert dec.multiplicities() == (1, 5, 4)
        assert np.allclose(dec.eigenvalues(), [3.0, 1.0, -2.0], atol=1e-8)
        # exact rational elimination confirms the multiplicities
        rows = [[int(x) for x in row] for row in g.adjacency()]
        assert eigenvalue_multiplicity(rows, 3) == 1
        assert eigenvalue_multiplicity(rows, 1) == 5
        assert eigenvalue_multiplicity(rows, -2) == 4

    def test_complete_graph_two_spaces(self):
        for n in range(3, 7):
            dec = decompose_adjacency(complete_graph(n).adjacency())
            assert dec.multiplicities() == (1, n - 1)
            assert np.allclose(dec.eigenvalues(), [n - 1.0, -1.0], atol=1e-9)

    def test_projector_identities(self):
        rng = random.Random(7)
        for _ in range(15):
            n = rng.randrange(2, 11)
            a = random_graph(n, 0.4, rng).adjacency()
            dec = decompose_adjacency(a)
            assert sum(dec.multiplicities()) == n
            total = np.zeros((n, n))
            for s in dec.spaces:
                p = s.projector
                assert np.allclose(p, p.T, atol=1e-9)
                assert np.allclose(p @ p, p, atol=1e-9)
                total += p
            assert np.allclose(total, np.eye(n), atol=1e-9)
            assert np.allclose(dec.reconstruction(), a, atol=1e-8)

    def test_projectors_orthogonal_across_spaces(self):
        dec = decompose_adjacency(cycle_graph(5).adjacency())
        for i in range(len(dec.spaces)):
            for j in range(i + 1, len(dec.spaces)):
                prod = dec.spaces[i].projector @ dec.spaces[j].projector
                assert np.max(np.abs(prod)) < 1e-9

    def test_near_gap_warning(self):
        w = np.array([5e-8, 0.0])
        v = np.eye(2)
        dec = group_eigenvalues(w, v, eig_tol=1e-8)
        assert dec.multiplicities() == (1, 1)
        assert len(dec.warnings) == 1
        assert "10x" in dec.warnings[0]

    def test_close_values_merge(self):
        w = np.array([5e-9, 0.0])
        v = np.eye(2)
        dec = group_eigenvalues(w, v, eig_tol=1e-8)
        assert dec.multiplicities() == (2,)
        assert dec.warnings == ()

    def test_default_eig_tol_scales(self):
        assert default_eig_tol(1) == pytest.approx(1e-8)
        assert default_eig_tol(100) == pytest.approx(1e-6)


class TestSpectraMatch:
    def test_isomorphic_graphs_match(self):
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randrange(2, 10)
            g = random_graph(n, 0.5, rng)
            perm = list(range(n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            d1 = decompose_adjacency(g.adjacency())
            d2 = decompose_adjacency(h.adjacency())
            assert spectra_match(d1, d2, 1e-6)

    def test_cospectral_pair_matches(self):
        # C4 plus isolated vertex and the 4-star share spectrum 2,0,0,0,-2
        g = cycle_graph(4).disjoint_union(path_graph(1))
        from eigenaut.graphs import star_graph

        h = star_graph(4)
        d1 = decompose_adjacency(g.adjacency())
        d2 = decompose_adjacency(h.adjacency())
        assert spectra_match(d1, d2, 1e-6)
        assert np.allclose(sorted_eigenvalues(d1), [2.0, 0.0, 0.0, 0.0, -2.0], atol=1e-9)

    def test_different_spectra_detected(self):
        d1 = decompose_adjacency(path_graph(3).adjacency())
        d2 = decompose_adjacency(cycle_graph(3).adjacency())
        assert not spectra_match(d1, d2, 1e-6)
        d3 = decompose_adjacency(path_graph(4).adjacency())
        assert not spectra_match(d1, d3, 1e-6)
