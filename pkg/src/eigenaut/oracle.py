"""Brute-force reference implementations with hard size guards.

These exist to pin down ground truth in tests.  They enumerate naively
and share nothing with the production pipeline beyond applying a
permutation to a point, so an agreement between the two is meaningful.
"""

from __future__ import annotations

from itertools import permutations

from .permgroup import Permutation

BRUTE_AUT_MAX = 10
BRUTE_ISO_MAX = 8
BRUTE_GEOM_MAX = 8
BRUTE_COSET_MAX = 10_000


def brute_aut(graph):
    """All automorphisms of a graph by checking every vertex permutation."""
    if graph.n > BRUTE_AUT_MAX:
        raise ValueError(f"brute_aut refuses n > {BRUTE_AUT_MAX}")
    edges = set()
    for u, v in graph.edges:
        edges.add((u, v))
        edges.add((v, u))
    out = []
    for img in permutations(range(graph.n)):
        if all((img[u], img[v]) in edges for u, v in graph.edges):
            out.append(Permutation(img))
    return out


def brute_iso(g1, g2):
    """Lexicographically first vertex bijection carrying g1 onto g2, or None."""
    if g1.n > BRUTE_ISO_MAX or g2.n > BRUTE_ISO_MAX:
        raise ValueError(f"brute_iso refuses n > {BRUTE_ISO_MAX}")
    if g1.n != g2.n or g1.m != g2.m:
        return None
    edges2 = set()
    for u, v in g2.edges:
        edges2.add((u, v))
        edges2.add((v, u))
    for img in permutations(range(g1.n)):
        if all((img[u], img[v]) in edges2 for u, v in g1.edges):
            return tuple(img)
    return None


def brute_geom_aut(points, tol=1e-9):
    """Permutations preserving all norms and pairwise distances.

    points: sequence of coordinate sequences.  Comparison is within tol,
    computed from scratch here with plain floats.
    """
    pts = [tuple(float(x) for x in p) for p in points]
    m = len(pts)
    if m > BRUTE_GEOM_MAX:
        raise ValueError(f"brute_geom_aut refuses more than {BRUTE_GEOM_MAX} points")

    def dot(p, q):
        return sum(a * b for a, b in zip(p, q))

    gram = [[dot(p, q) for q in pts] for p in pts]
    out = []
    for img in permutations(range(m)):
        ok = True
        for i in range(m):
            for j in range(i, m):
                if abs(gram[i][j] - gram[img[i]][img[j]]) > tol:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Permutation(img))
    return out


def _closure(gens, degree):
    """All elements generated by the given image tuples, by naive closure."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[x] for x in p)
                if q not in seen:
                    if len(seen) >= BRUTE_COSET_MAX:
                        raise ValueError("brute closure exceeded size guard")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def coset_elements(coset):
    """Explicit element set of a small PermutationCoset, as image tuples."""
    if coset.empty:
        return set()
    rep = coset.representative
    degree = rep.degree
    gens = [tuple(g.apply(x) for x in range(degree)) for g in coset.group.generators]
    rep_img = tuple(rep.apply(x) for x in range(degree))
    group = _closure(gens, degree)
    return {tuple(rep_img[x] for x in g) for g in group}


def brute_coset_meet(coset1, coset2):
    """Exact element-set intersection of two explicitly enumerable cosets."""
    return coset_elements(coset1) & coset_elements(coset2)


BRUTE_HYP_MAX = 200_000


def brute_hyp_aut(classes, groups, hyperedges):
    """Product elements fixing a hyperedge multiset, by full enumeration.

    classes: per color, global vertex ids; groups: per color, local image
    tuples; hyperedges: (vertex collection, multiplicity) pairs.  Returns
    global image tuples over 0..max_vertex.
    """
    from itertools import product as iproduct

    total = 1
    for g in groups:
        total *= len(g)
    if total > BRUTE_HYP_MAX:
        raise ValueError(f"brute_hyp_aut refuses product size > {BRUTE_HYP_MAX}")
    degree = max(x for pts in classes for x in pts) + 1
    counts = {}
    for verts, mult in hyperedges:
        key = tuple(sorted(verts))
        counts[key] = counts.get(key, 0) + mult
    out = set()
    for combo in iproduct(*groups):
        img = list(range(degree))
        for points, elem in zip(classes, combo):
            for pos, x in enumerate(points):
                img[x] = points[elem[pos]]
        moved = {}
        for key, mult in counts.items():
            mkey = tuple(sorted(img[x] for x in key))
            moved[mkey] = moved.get(mkey, 0) + mult
        if moved == counts:
            out.add(tuple(img))
    return out
