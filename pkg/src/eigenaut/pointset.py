"""Point-set encoding of a graph and its per-eigenspace projections.

A graph on n vertices with m edges becomes n unit vectors followed by m
edge-indicator vectors e_a + e_b.  Projecting into each eigenspace and
merging coincident images yields, per eigenspace, a set of distinct
points plus the fiber partition of the original points above them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ToleranceError

DEFAULT_POINT_TOL = 1e-6


def default_point_tol():
    return DEFAULT_POINT_TOL


@dataclass(frozen=True)
class PointSet:
    """Vertex and edge indicator vectors of a graph, in a fixed order."""

    dimension: int
    points: np.ndarray = field(repr=False)
    roles: tuple = ()

    @property
    def size(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class ProjectedPointSet:
    """Distinct images of the point set inside one eigenspace."""

    space_index: int
    distinct_points: np.ndarray = field(repr=False)
    fiber_of: tuple = ()
    fibers: tuple = ()

    @property
    def size(self):
        return self.distinct_points.shape[0]


def graph_point_set(graph):
    """Unit vectors for vertices, then e_a + e_b per edge in sorted order."""
    n = graph.n
    edges = graph.sorted_edges()
    pts = np.zeros((n + len(edges), n), dtype=np.float64)
    roles = []
    for u in range(n):
        pts[u, u] = 1.0
        roles.append(("vertex", u))
    for i, (a, b) in enumerate(edges):
        pts[n + i, a] = 1.0
        pts[n + i, b] = 1.0
        roles.append(("edge", (a, b)))
    return PointSet(dimension=n, points=pts, roles=tuple(roles))


def _dedup(projected, point_tol):
    """Merge coincident rows by distance clustering.

    Rows closer than point_tol/1000 are linked and the connected
    components become the fibers, so rows equal to working precision
    always merge.  Unrelated rows that land within the link radius
    merge too; the exact verification downstream discards whatever
    spurious symmetry that creates.  A guard rejects fibers chained
    across more than point_tol/100, where the grouping would be an
    accident of spacing.  Fibers are ordered by their representative
    row, compared lexicographically.
    """
    k = projected.shape[0]
    if k == 0:
        return np.zeros((0, projected.shape[1])), (), ()
    # differences taken coordinate-wise: the norm identity would lose
    # half the mantissa to cancellation and floor distances near 1e-8
    dist2 = np.empty((k, k))
    for s in range(0, k, 64):
        diff = projected[s : s + 64, None, :] - projected[None, :, :]
        dist2[s : s + 64] = np.einsum("ijd,ijd->ij", diff, diff)
    eq2 = (point_tol / 1000.0) ** 2
    span2 = (point_tol / 100.0) ** 2
    linked = dist2 <= eq2
    comp = np.full(k, -1, dtype=np.int64)
    groups = []
    for i in range(k):
        if comp[i] >= 0:
            continue
        members = [i]
        comp[i] = len(groups)
        frontier = [i]
        while frontier:
            cur = frontier.pop()
            for j in np.flatnonzero(linked[cur]):
                if comp[j] < 0:
                    comp[j] = comp[i]
                    members.append(int(j))
                    frontier.append(int(j))
        groups.append(sorted(members))
    same = comp[:, None] == comp[None, :]
    off = ~np.eye(k, dtype=bool)
    chained = int(np.count_nonzero(same & off & (dist2 > span2))) // 2
    if chained:
        raise ToleranceError(
            f"point dedup guard failed: {chained} merged pairs sit farther "
            f"apart than {point_tol / 100.0:.1e} though linked through gaps "
            f"under {point_tol / 1000.0:.1e}; adjust the point tolerance"
        )
    order = sorted(range(len(groups)), key=lambda c: tuple(projected[groups[c][0]]))
    fibers = tuple(tuple(groups[c]) for c in order)
    fiber_of = [0] * k
    for d_idx, fib in enumerate(fibers):
        for i in fib:
            fiber_of[i] = d_idx
    distinct = np.stack([projected[fib[0]] for fib in fibers])
    return distinct, tuple(fiber_of), fibers


def project_points(pset, projector):
    """Images of all points under one symmetric projector."""
    return pset.points @ projector


def project_space(pset, space, idx, point_tol=None):
    """ProjectedPointSet for one eigenspace, deduplicated with guard."""
    if point_tol is None:
        point_tol = DEFAULT_POINT_TOL
    if point_tol <= 0.0:
        raise ValueError("point_tol must be positive")
    projected = project_points(pset, space.projector)
    distinct, fiber_of, fibers = _dedup(projected, point_tol)
    return ProjectedPointSet(
        space_index=idx,
        distinct_points=distinct,
        fiber_of=fiber_of,
        fibers=fibers,
    )


def project_all(pset, dec, point_tol=None):
    """One ProjectedPointSet per eigenspace, deduplicated with guard."""
    return [
        project_space(pset, space, idx, point_tol)
        for idx, space in enumerate(dec.spaces)
    ]


def ell_equivalence_classes(proj):
    """Partition of original point indices by shared projected image."""
    return proj.fibers


def common_refinement(projs, size):
    """Intersection of the fiber partitions across all eigenspaces."""
    labels = {}
    for i in range(size):
        key = tuple(p.fiber_of[i] for p in projs)
        labels.setdefault(key, []).append(i)
    return tuple(tuple(v) for v in sorted(labels.values()))
