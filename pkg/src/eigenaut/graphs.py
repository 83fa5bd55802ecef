"""Undirected simple graphs and a few named families used throughout."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _normalize_edges(n, edges):
    out = set()
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {e} out of range for {n} vertices")
        if u == v:
            raise ValueError(f"loop at vertex {u} not allowed")
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))

    @property
    def m(self):
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def adjacency(self):
        """Adjacency matrix as an integer array."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self.edges

    def relabel(self, perm):
        """Image of the graph under a vertex permutation (maps i to perm[i])."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabeling is not a permutation of the vertices")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def disjoint_union(self, other):
        shifted = [(u + self.n, v + self.n) for u, v in other.edges]
        return Graph(self.n + other.n, list(self.edges) + shifted)

    def components(self):
        """Connected components as sorted vertex lists, ordered by minimum vertex."""
        seen = [False] * self.n
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_automorphism(self, perm):
        """Exact integer check that the vertex map preserves adjacency."""
        a = self.adjacency()
        img = np.asarray(perm, dtype=np.intp)
        return bool(np.array_equal(a[np.ix_(img, img)], a))


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n):
    return Graph(n, [])


def star_graph(leaves):
    """Central vertex 0 joined to `leaves` outer vertices."""
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph(n, p, rng):
    """Erdos-Renyi sample using the given random.Random instance."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, edges)
