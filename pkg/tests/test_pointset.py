import math
import random

import numpy as np
import pytest

from eigenaut.errors import ToleranceError
from eigenaut.graphs import Graph, complete_graph, empty_graph, path_graph, random_graph
from eigenaut.pointset import (
    common_refinement,
    ell_equivalence_classes,
    graph_point_set,
    project_all,
    project_points,
)
from eigenaut.spectral import decompose_adjacency


class TestGraphPointSet:
    def test_path_on_three(self):
        ps = graph_point_set(path_graph(3))
        assert ps.dimension == 3
        expect = np.array(
            [
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, 1, 0],
                [0, 1, 1],
            ],
            dtype=float,
        )
        assert np.array_equal(ps.points, expect)
        assert ps.roles == (
            ("vertex", 0),
            ("vertex", 1),
            ("vertex", 2),
            ("edge", (0, 1)),
            ("edge", (1, 2)),
        )

    def test_edgeless_only_unit_vectors(self):
        ps = graph_point_set(empty_graph(4))
        assert np.array_equal(ps.points, np.eye(4))

    def test_norms_by_role(self):
        ps = graph_point_set(complete_graph(4))
        for row, role in zip(ps.points, ps.roles):
            want = 1.0 if role[0] == "vertex" else 2.0
            assert np.dot(row, row) == want

    def test_pairwise_distances(self):
        # incident vertex/edge at 1, non-incident at sqrt(3),
        # edges sharing a vertex at sqrt(2), disjoint edges at 2
        g = Graph(4, [(0, 1), (2, 3), (1, 2)])
        ps = graph_point_set(g)
        idx = {role: i for i, role in enumerate(ps.roles)}
        pt = ps.points

        def dist(r1, r2):
            return float(np.linalg.norm(pt[idx[r1]] - pt[idx[r2]]))

        assert dist(("vertex", 0), ("edge", (0, 1))) == pytest.approx(1.0)
        assert dist(("vertex", 3), ("edge", (0, 1))) == pytest.approx(math.sqrt(3))
        assert dist(("edge", (0, 1)), ("edge", (1, 2))) == pytest.approx(math.sqrt(2))
        assert dist(("edge", (0, 1)), ("edge", (2, 3))) == pytest.approx(2.0)

    def test_full_dimensional(self):
        rng = random.Random(11)
        for _ in range(10):
            g = random_graph(rng.randrange(1, 9), 0.5, rng)
            ps = graph_point_set(g)
            assert np.linalg.matrix_rank(ps.points) == g.n


class TestProjectAll:
    def test_k2_negative_space_projection(self):
        g = complete_graph(2)
        ps = graph_point_set(g)
        dec = decompose_adjacency(g.adjacency())
        imgs = project_points(ps, dec.spaces[1].projector)
        assert np.allclose(imgs[0], [0.5, -0.5], atol=1e-9)

    def test_single_space_identity_fibers(self):
        # P_2-free graph with trivial spectrum spread: use a graph whose
        # adjacency is zero so the only eigenvalue is 0 with full space
        g = empty_graph(3)
        ps = graph_point_set(g)
        dec = decompose_adjacency(g.adjacency())
        assert len(dec.spaces) == 1
        projs = project_all(ps, dec)
        assert projs[0].size == 3
        assert np.allclose(projs[0].distinct_points[list(projs[0].fiber_of)], ps.points)
        for fib in projs[0].fibers:
            assert len(fib) == 1

    def test_k2_positive_space_fiber_merges_vertices(self):
        g = complete_graph(2)
        ps = graph_point_set(g)
        dec = decompose_adjacency(g.adjacency())
        projs = project_all(ps, dec)
        plus = projs[0]
        classes = ell_equivalence_classes(plus)
        # e_0 and e_1 both project to (1/2, 1/2); the edge point to (1, 1)
        assert set(frozenset(c) for c in classes) == {frozenset({0, 1}), frozenset({2})}

    def test_reconstruction_and_pythagoras(self):
        rng = random.Random(5)
        for _ in range(12):
            g = random_graph(rng.randrange(2, 10), 0.5, rng)
            ps = graph_point_set(g)
            dec = decompose_adjacency(g.adjacency())
            parts = [project_points(ps, s.projector) for s in dec.spaces]
            total = sum(parts)
            assert np.allclose(total, ps.points, atol=1e-6)
            for _ in range(5):
                i = rng.randrange(ps.size)
                j = rng.randrange(ps.size)
                direct = float(np.sum((ps.points[i] - ps.points[j]) ** 2))
                split = sum(float(np.sum((p[i] - p[j]) ** 2)) for p in parts)
                assert split == pytest.approx(direct, abs=1e-6)

    def test_fibers_partition_and_refinement(self):
        rng = random.Random(13)
        for _ in range(12):
            g = random_graph(rng.randrange(2, 10), 0.4, rng)
            ps = graph_point_set(g)
            dec = decompose_adjacency(g.adjacency())
            projs = project_all(ps, dec)
            for pr in projs:
                seen = sorted(i for fib in pr.fibers for i in fib)
                assert seen == list(range(ps.size))
                assert pr.size <= ps.size
                for d, fib in enumerate(pr.fibers):
                    for i in fib:
                        assert pr.fiber_of[i] == d
            refined = common_refinement(projs, ps.size)
            assert all(len(c) == 1 for c in refined)

    def test_distinct_points_sorted_by_key(self):
        g = path_graph(4)
        ps = graph_point_set(g)
        dec = decompose_adjacency(g.adjacency())
        for pr in project_all(ps, dec):
            keys = [tuple(np.asarray(np.round(row / 1e-6), dtype=np.int64)) for row in pr.distinct_points]
            assert keys == sorted(keys)

    def test_guard_rejects_chained_fiber(self):
        # consecutive points link pairwise but the fiber drifts past 1e-8
        class FakeSpace:
            projector = np.eye(2)

        class FakeDec:
            spaces = (FakeSpace(),)

        from eigenaut.pointset import PointSet

        pts = np.array([[i * 9e-10, 0.0] for i in range(15)])
        roles = tuple(("vertex", i) for i in range(15))
        ps = PointSet(dimension=2, points=pts, roles=roles)
        with pytest.raises(ToleranceError):
            project_all(ps, FakeDec())

    def test_rejects_bad_tolerance(self):
        g = path_graph(3)
        ps = graph_point_set(g)
        dec = decompose_adjacency(g.adjacency())
        with pytest.raises(ValueError):
            project_all(ps, dec, point_tol=0.0)
