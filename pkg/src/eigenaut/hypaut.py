"""Automorphisms of colored multi-hypergraphs with listed color groups.

The instance carries a partition of the vertices into color classes,
an explicitly listed permutation group on each class, and a multiset of
hyperedges.  The solver finds the subgroup of the product of the listed
groups that fixes the hyperedge multiset, by dynamic programming over
nested hyperedge blocks: blocks at level l collect hyperedges sharing
all traces on colors after l, sub-block isomorphism cosets are combined
by restricted coset intersection, alternatives by coset union.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InconsistencyError
from .permgroup import (
    ListedProduct,
    Permutation,
    PermutationCoset,
    PermutationGroup,
    coset_meet,
    coset_union,
)


class ColoredMultiHypergraph:
    """Vertex partition, listed per-color groups, hyperedge multiset.

    classes: per color, the global vertex ids (their order fixes local
    indexing).  groups: per color, the explicit element list as local
    image tuples.  hyperedges: iterable of (vertex collection,
    multiplicity) pairs or bare vertex collections (multiplicity 1).
    """

    def __init__(self, classes, groups, hyperedges):
        if len(classes) != len(groups):
            raise ValueError("classes and groups must align")
        self.system = ListedProduct(list(zip(classes, groups)))
        self.num_colors = self.system.num_colors
        self.degree = self.system.degree
        edges = {}
        for entry in hyperedges:
            if (
                isinstance(entry, tuple)
                and len(entry) == 2
                and not isinstance(entry[0], int)
                and isinstance(entry[1], int)
            ):
                verts, mult = entry
            else:
                verts, mult = entry, 1
            if mult < 1:
                raise ValueError("hyperedge multiplicity must be at least 1")
            trace = self.canonical_trace(verts)
            edges[trace] = edges.get(trace, 0) + mult
        self.edges = edges

    def canonical_trace(self, verts):
        """Per-color sorted tuples of the vertex set, as one tuple."""
        verts = set(verts)
        per_color = [[] for _ in range(self.num_colors)]
        for x in verts:
            loc = self.system._locate.get(x)
            if loc is None:
                raise ValueError(f"hyperedge vertex {x} is in no color class")
            per_color[loc[0]].append(x)
        return tuple(tuple(sorted(p)) for p in per_color)

    def apply_listed(self, color, elem_index, trace):
        """Image of a sorted global trace under one listed element."""
        points = self.system.classes[color]
        elem = self.system.elements[color][elem_index]
        loc = self.system._locate
        return tuple(sorted(points[elem[loc[x][1]]] for x in trace))

    def listed_group(self, color):
        return self.system.elements[color]


@dataclass(frozen=True)
class Block:
    """Hyperedges agreeing on every color from level onward."""

    level: int
    key: tuple
    members: tuple

    @property
    def size(self):
        return sum(m for _, m in self.members)

    def content(self):
        """Members truncated to the colors below level, canonically sorted."""
        return tuple(sorted((t[: self.level], m) for t, m in self.members))


def build_blocks(hyp, level):
    """Partition the hyperedges by their traces on colors >= level."""
    if not 0 <= level <= hyp.num_colors:
        raise ValueError(f"level {level} out of range")
    groups = {}
    for trace, mult in hyp.edges.items():
        groups.setdefault(trace[level:], []).append((trace, mult))
    return [
        Block(level=level, key=key, members=tuple(sorted(groups[key])))
        for key in sorted(groups)
    ]


def _embedded(system, color, elem_index):
    """Dense global permutation acting as one listed element on its color
    class and as the identity elsewhere."""
    points = system.classes[color]
    elem = system.elements[color][elem_index]
    image = list(range(system.degree))
    for pos, x in enumerate(points):
        image[x] = points[elem[pos]]
    return Permutation._unchecked(tuple(image))


def stage0(block_a, block_b, hyp):
    """Base entry for single-hyperedge blocks.

    Empty on multiplicity mismatch; otherwise the subcoset of the first
    color group mapping a's first-color trace onto b's, found by
    scanning the explicit list.
    """
    if block_a.level != 0 or block_b.level != 0:
        raise ValueError("stage0 expects level-0 blocks")
    if block_a.size != block_b.size:
        return PermutationCoset.empty_coset()
    a_trace = block_a.members[0][0][0]
    b_trace = block_b.members[0][0][0]
    system = hyp.system
    stab = []
    rep = None
    for i in range(len(hyp.listed_group(0))):
        img = hyp.apply_listed(0, i, a_trace)
        if img == b_trace and rep is None:
            rep = i
        if img == a_trace:
            stab.append(i)
    if rep is None:
        return PermutationCoset.empty_coset()
    gens = [_embedded(system, 0, i) for i in stab]
    group = PermutationGroup(
        [g for g in gens if not g.is_identity()],
        identity=Permutation.identity(system.degree),
    )
    return PermutationCoset(group, _embedded(system, 0, rep))


def compute_S_ell(a_traces, b_traces, hyp, color):
    """Listed elements of one color group mapping one trace set onto another.

    Returns (element as an embedded product permutation, induced index
    bijection) pairs; tau_hat[i] = j when the element sends a_traces[i]
    to b_traces[j].
    """
    if len(a_traces) != len(b_traces):
        return []
    b_index = {t: j for j, t in enumerate(b_traces)}
    out = []
    for i in range(len(hyp.listed_group(color))):
        tau_hat = []
        for t in a_traces:
            j = b_index.get(hyp.apply_listed(color, i, t))
            if j is None:
                tau_hat = None
                break
            tau_hat.append(j)
        if tau_hat is not None:
            out.append((_embedded(hyp.system, color, i), tuple(tau_hat)))
    return out


def _fingerprint(content, level):
    """Cheap invariants of a block content preserved by any isomorphism."""
    return tuple(
        sorted((m, tuple(len(t[c]) for c in range(level))) for t, m in content)
    )


class IsoTable:
    """Content-addressed memo of block-pair isomorphism cosets.

    Entries are cosets inside the product of the color groups up to the
    block level, embedded with identity on all later colors.  Computed
    on demand, top down.
    """

    def __init__(self, hyp):
        self.hyp = hyp
        self._memo = {}
        self._sell_memo = {}

    def _sell(self, a_traces, b_traces, color):
        key = (color, tuple(a_traces), tuple(b_traces))
        hit = self._sell_memo.get(key)
        if hit is None:
            hit = compute_S_ell(a_traces, b_traces, self.hyp, color)
            self._sell_memo[key] = hit
        return hit

    def entry(self, block_a, block_b):
        if block_a.level != block_b.level:
            raise ValueError("blocks at different levels")
        return self._iso(block_a.level, block_a.content(), block_b.content())

    def _iso(self, level, ca, cb):
        key = (level, ca, cb)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._compute(level, ca, cb)
        self._memo[key] = out
        return out

    def _compute(self, level, ca, cb):
        if _fingerprint(ca, level) != _fingerprint(cb, level):
            return PermutationCoset.empty_coset()
        system = self.hyp.system
        if level == 0:
            ident = Permutation.identity(system.degree)
            group = PermutationGroup([], identity=ident)
            return PermutationCoset(group, ident)
        a_traces, a_subs = _split(ca, level)
        b_traces, b_subs = _split(cb, level)
        if len(a_traces) != len(b_traces):
            return PermutationCoset.empty_coset()
        # elements sharing an induced trace bijection need one meet chain
        by_hat = {}
        for tau, tau_hat in self._sell(a_traces, b_traces, level - 1):
            by_hat.setdefault(tau_hat, []).append(tau)
        branches = []
        for tau_hat, taus in by_hat.items():
            cur = None
            seen = set()
            for j in range(len(a_traces)):
                sub = self._iso(level - 1, a_subs[j], b_subs[tau_hat[j]])
                if sub.empty:
                    cur = None
                    break
                if id(sub) in seen:
                    continue
                seen.add(id(sub))
                if cur is None:
                    cur = sub
                else:
                    cur = coset_meet(cur, sub)
                    if cur.empty:
                        cur = None
                        break
            if cur is None:
                continue
            for tau in taus:
                branches.append(
                    PermutationCoset(cur.group, cur.representative * tau)
                )
        return coset_union(branches)


def block_isomorphisms(hyp, block_a, block_b, table=None):
    """Coset of product elements mapping one block's content to another's."""
    if table is None:
        table = IsoTable(hyp)
    return table.entry(block_a, block_b)


def hyp_aut_product(hyp):
    """Automorphism group over compact product elements, plus the system."""
    top = build_blocks(hyp, hyp.num_colors)
    system = hyp.system
    if not top:
        # no hyperedges: everything in the product fixes the empty multiset
        gens = [
            _embedded(system, c, i)
            for c in range(system.num_colors)
            for i in range(len(system.elements[c]))
            if i != system.id_index[c]
        ]
        group = PermutationGroup(gens, identity=Permutation.identity(system.degree))
        return group, system
    assert len(top) == 1
    table = IsoTable(hyp)
    coset = table.entry(top[0], top[0])
    if coset.empty:
        raise InconsistencyError("self-isomorphism table entry came back empty")
    if not coset.group.contains(coset.representative):
        raise InconsistencyError("self-isomorphism coset is not a group")
    return coset.group, system


def hyp_aut(hyp):
    """Automorphism group as dense permutations of the global vertices."""
    group, _ = hyp_aut_product(hyp)
    return group


def _split(content, level):
    """Sub-blocks of a level content, grouped by the trace on the last
    free color; returns their traces there and their truncated contents."""
    groups = {}
    for trace, mult in content:
        groups.setdefault(trace[level - 1], []).append((trace[: level - 1], mult))
    items = sorted(groups.items())
    traces = [t for t, _ in items]
    subs = [tuple(sorted(sub)) for _, sub in items]
    return traces, subs


def instance_to_json(hyp):
    """Serialize an instance; group elements in 1-based local cycle form."""
    colors = []
    for points, elems in zip(hyp.system.classes, hyp.system.elements):
        colors.append(
            {
                "points": list(points),
                "elements": [Permutation(e).cycle_string() for e in elems],
            }
        )
    edges = [
        {"vertices": sorted(x for part in trace for x in part), "multiplicity": mult}
        for trace, mult in sorted(hyp.edges.items())
    ]
    return json.dumps({"colors": colors, "hyperedges": edges}, indent=2)


def instance_from_json(text):
    data = json.loads(text)
    classes = []
    groups = []
    for color in data["colors"]:
        points = [int(x) for x in color["points"]]
        size = len(points)
        elems = [
            Permutation.from_cycle_string(s, size).image for s in color["elements"]
        ]
        classes.append(points)
        groups.append(elems)
    hyperedges = [
        ([int(x) for x in e["vertices"]], int(e.get("multiplicity", 1)))
        for e in data["hyperedges"]
    ]
    return ColoredMultiHypergraph(classes, groups, hyperedges)
