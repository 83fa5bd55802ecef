"""End-to-end automorphism groups and isomorphism decisions.

The chain: eigendecompose the adjacency matrix, project the vertex and
edge indicator points into each eigenspace, list each eigenspace's
geometric automorphisms, solve the induced colored-hypergraph
automorphism problem, lift the result back to vertex permutations, and
keep only generators passing the exact integer adjacency identity.
Floating point only ever proposes candidates; integers decide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, InconsistencyError, ToleranceError
from .geomaut import DEFAULT_GRAM_TOL, list_geometric_automorphisms, quantized_gram
from .graphs import Graph
from .hypaut import ColoredMultiHypergraph, hyp_aut_product
from .permgroup import Permutation, build_group, orbit_with_witness
from .pointset import DEFAULT_POINT_TOL, graph_point_set, project_space
from .spectral import decompose_adjacency, default_eig_tol, spectra_match


@dataclass(frozen=True)
class AutResult:
    """Automorphism group of a graph plus verification status."""

    graph: Graph
    group: object
    order: int
    verified: bool
    spectrum: tuple
    diagnostics: tuple

    def generators(self):
        return list(self.group.generators)


@dataclass(frozen=True)
class IsoResult:
    """Isomorphism decision, witness when isomorphic, reason when not."""

    isomorphic: bool
    witness: object
    reason: object
    diagnostics: tuple


def geom_aut_instance(graph, sweep_tol=None, eig_tol=None):
    """Point set plus spectral decomposition for one graph."""
    pset = graph_point_set(graph)
    dec = decompose_adjacency(graph.adjacency(), sweep_tol=sweep_tol, eig_tol=eig_tol)
    return pset, dec


def reduce_to_hypaut(pset, projections, auts):
    """Colored hypergraph whose automorphisms are the point-set symmetries.

    Color class l holds the distinct projected points of eigenspace l
    (as fresh consecutive vertex ids), carrying the listed geometric
    automorphism group; each original point contributes one hyperedge
    meeting every color in exactly its projected image.
    """
    classes = []
    groups = []
    offsets = []
    start = 0
    for proj, aut in zip(projections, auts):
        offsets.append(start)
        classes.append(list(range(start, start + proj.size)))
        groups.append([p.image for p in aut.elements])
        start += proj.size
    hyperedges = []
    for i in range(pset.size):
        hyperedges.append(
            [offsets[l] + proj.fiber_of[i] for l, proj in enumerate(projections)]
        )
    return ColoredMultiHypergraph(classes, groups, hyperedges)


def _hyperedge_keys(projections, size):
    """Original point index -> its one-vertex-per-color hyperedge tuple."""
    offsets = []
    acc = 0
    for proj in projections:
        offsets.append(acc)
        acc += proj.size
    keys = {}
    for i in range(size):
        key = tuple(offsets[l] + proj.fiber_of[i] for l, proj in enumerate(projections))
        keys[key] = i
    return keys


def lift_to_vertex_group(group, system, pset, projections, vertex_count):
    """Restrict hypergraph automorphisms to graph vertex permutations.

    Each product element permutes the per-color vertices; its action on
    the hyperedges induces a permutation of the original points, whose
    restriction to the vertex points (the norm-1 points, never mixed
    with norm-sqrt(2) edge points) is the candidate vertex permutation.
    """
    index_of = _hyperedge_keys(projections, pset.size)
    if len(index_of) != pset.size:
        raise InconsistencyError(
            "two original points share every projection; dedup fault upstream"
        )
    lifted = []
    for g in group.generators:
        point_image = [None] * pset.size
        for key, i in index_of.items():
            img_key = tuple(g.apply(v) for v in key)
            j = index_of.get(img_key)
            if j is None:
                raise InconsistencyError(
                    "hypergraph generator does not permute the hyperedges"
                )
            point_image[i] = j
        if sorted(point_image) != list(range(pset.size)):
            raise InconsistencyError(
                "induced hyperedge action is not a point permutation"
            )
        vertex_image = point_image[:vertex_count]
        if sorted(vertex_image) != list(range(vertex_count)):
            raise InconsistencyError(
                "induced point permutation mixes vertex and edge points"
            )
        lifted.append(Permutation(vertex_image))
    return lifted


def _space_gram(points, gram_tol, space_index):
    """Quantized inner products for one eigenspace.

    With an unpinned tolerance, a guard failure means the grid cannot
    tell genuinely distinct products apart, so the tolerance is
    tightened and the quantization retried; products that are truly
    equal stay far inside a common bucket at every rung because the
    eigensolver noise is orders of magnitude below the finest grid.
    A pinned tolerance is passed through untouched.
    """
    if gram_tol is not None:
        return quantized_gram(points, gram_tol=gram_tol), None
    ladder = (DEFAULT_GRAM_TOL, DEFAULT_GRAM_TOL / 100.0, DEFAULT_GRAM_TOL / 10000.0)
    for i, tol in enumerate(ladder):
        try:
            gram = quantized_gram(points, gram_tol=tol)
        except ToleranceError:
            if i == len(ladder) - 1:
                raise
            continue
        note = None
        if i > 0:
            note = (
                f"eigenspace {space_index}: gram tolerance tightened to "
                f"{tol:.0e} to separate nearly equal inner products"
            )
        return gram, note


def _space_points(pset, space, idx, point_tol):
    """Projected point set for one eigenspace, with the same adaptive
    tolerance ladder as _space_gram when the tolerance is unpinned."""
    if point_tol is not None:
        return project_space(pset, space, idx, point_tol=point_tol), None
    ladder = (DEFAULT_POINT_TOL, DEFAULT_POINT_TOL / 100.0, DEFAULT_POINT_TOL / 10000.0)
    for i, tol in enumerate(ladder):
        try:
            proj = project_space(pset, space, idx, point_tol=tol)
        except ToleranceError:
            if i == len(ladder) - 1:
                raise
            continue
        note = None
        if i > 0:
            note = (
                f"eigenspace {idx}: point tolerance tightened to "
                f"{tol:.0e} to separate nearby projected points"
            )
        return proj, note


def automorphism_group(
    graph,
    sweep_tol=None,
    eig_tol=None,
    point_tol=None,
    gram_tol=None,
    cap=None,
):
    """Full pipeline automorphism group with exact final verification.

    Every candidate generator must satisfy the integer identity
    A[g(i), g(j)] == A[i, j]; failures are dropped with a warning and
    verified is set to False rather than ever returning an unchecked
    generator.
    """
    pset, dec = geom_aut_instance(graph, sweep_tol=sweep_tol, eig_tol=eig_tol)
    diagnostics = list(dec.warnings)
    projections = []
    for idx, space in enumerate(dec.spaces):
        proj, note = _space_points(pset, space, idx, point_tol)
        if note:
            diagnostics.append(note)
        projections.append(proj)
    auts = []
    for proj in projections:
        gram, note = _space_gram(proj.distinct_points, gram_tol, proj.space_index)
        if note:
            diagnostics.append(note)
        try:
            auts.append(
                list_geometric_automorphisms(
                    gram, cap=cap, space_index=proj.space_index
                )
            )
        except CapExceeded as exc:
            k = max(s.multiplicity for s in dec.spaces)
            raise CapExceeded(
                f"{exc} (largest eigenvalue multiplicity is {k}; raise the "
                f"listing cap or expect high-multiplicity inputs to fail)",
                size=exc.size,
                cap=exc.cap,
            ) from exc
    # the solver scans the last color's listed group linearly but meets
    # cosets over the earlier ones, so put the largest group last
    by_size = sorted(range(len(auts)), key=lambda l: (auts[l].order, l))
    projections = [projections[l] for l in by_size]
    auts = [auts[l] for l in by_size]
    hyp = reduce_to_hypaut(pset, projections, auts)
    product_group, system = hyp_aut_product(hyp)
    candidates = lift_to_vertex_group(
        product_group, system, pset, projections, graph.n
    )
    survivors = []
    rejected = 0
    for p in candidates:
        if graph.is_automorphism(p.image):
            survivors.append(p)
        else:
            rejected += 1
    verified = rejected == 0
    if rejected:
        diagnostics.append(
            f"{rejected} candidate generators failed exact verification and "
            f"were dropped; the reported group may be incomplete"
        )
    group = build_group(survivors, identity=Permutation.identity(graph.n))
    return AutResult(
        graph=graph,
        group=group,
        order=group.order(),
        verified=verified,
        spectrum=dec.grouped_spectrum(),
        diagnostics=tuple(diagnostics),
    )


def _spectrum_tolerance(n):
    return 10.0 * default_eig_tol(max(1, n))


def isomorphic(
    graph1,
    graph2,
    sweep_tol=None,
    eig_tol=None,
    point_tol=None,
    gram_tol=None,
    cap=None,
):
    """Isomorphism decision with an exactly verified witness.

    Quick rejects on vertex count, edge count, and full spectra; the
    positive path computes the automorphism group of the disjoint union
    and pairs connected components along its orbits.  The returned
    witness always passes an exact two-way edge check.
    """
    if graph1.n != graph2.n:
        return IsoResult(False, None, "vertex counts differ", ())
    if graph1.m != graph2.m:
        return IsoResult(False, None, "edge counts differ", ())
    if graph1.n == 0:
        return IsoResult(True, Permutation(()), None, ())
    d1 = decompose_adjacency(graph1.adjacency(), sweep_tol=sweep_tol, eig_tol=eig_tol)
    d2 = decompose_adjacency(graph2.adjacency(), sweep_tol=sweep_tol, eig_tol=eig_tol)
    if not spectra_match(d1, d2, _spectrum_tolerance(graph1.n)):
        return IsoResult(False, None, "adjacency spectra differ", ())
    union = graph1.disjoint_union(graph2)
    aut = automorphism_group(
        union,
        sweep_tol=sweep_tol,
        eig_tol=eig_tol,
        point_tol=point_tol,
        gram_tol=gram_tol,
        cap=cap,
    )
    diagnostics = aut.diagnostics
    n1 = graph1.n
    components = union.components()
    orbits = {}
    assigned = {}
    for comp in components:
        cset = frozenset(comp)
        if cset in assigned:
            continue
        wit = orbit_with_witness(aut.group, cset)
        rep = cset
        for member in wit:
            assigned[member] = rep
        orbits[rep] = wit
    pairs = []
    balanced = True
    for rep, wit in orbits.items():
        side0 = sorted((min(c) for c in wit if min(c) < n1))
        side1 = sorted((min(c) for c in wit if min(c) >= n1))
        if len(side0) != len(side1):
            balanced = False
            break
        members = {min(c): c for c in wit}
        for a, b in zip(side0, side1):
            ca, cb = members[a], members[b]
            # maps ca onto the orbit representative, then out to cb
            h = wit[ca].inverse() * wit[cb]
            pairs.append((ca, h))
    if not balanced:
        return IsoResult(False, None, "no balanced component orbit matching", diagnostics)
    image = [None] * n1
    for comp, h in pairs:
        for v in comp:
            image[v] = h.apply(v) - n1
    if sorted(image) != list(range(n1)):
        raise InconsistencyError("stitched witness is not a bijection")
    witness = Permutation(image)
    _verify_witness(graph1, graph2, witness)
    return IsoResult(True, witness, None, diagnostics)


def _verify_witness(graph1, graph2, witness):
    """Exact two-way edge preservation; failure is an invariant breach."""
    for u, v in graph1.edges:
        if not graph2.has_edge(witness.apply(u), witness.apply(v)):
            raise InconsistencyError("witness does not preserve an edge")
    inv = witness.inverse()
    for u, v in graph2.edges:
        if not graph1.has_edge(inv.apply(u), inv.apply(v)):
            raise InconsistencyError("witness inverse does not preserve an edge")


def isomorphism_witness(graph1, graph2, **kwargs):
    """The witness permutation when isomorphic, otherwise None."""
    out = isomorphic(graph1, graph2, **kwargs)
    return out.witness if out.isomorphic else None
