"""Permutations, groups with strong generating sets, and coset algebra.

Composition is left-to-right: (p * q) applies p first, then q.  All points
are integers.  Groups are stored as a base and strong generating set built
by a deterministic Schreier-Sims procedure, so orders are exact arbitrary
precision integers and membership is decided by sifting.

Besides dense permutations the module handles products of explicitly
listed groups acting on disjoint point classes (ListedProduct), whose
elements are kept as per-class indices into the listed elements.  The
group engine is element-agnostic: it only needs *, inverse(), apply(),
is_identity(), degree and hashing.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .errors import InconsistencyError

__all__ = [
    "Permutation",
    "PermutationGroup",
    "PermutationCoset",
    "ListedProduct",
    "ProductPermutation",
    "build_group",
    "group_order",
    "pointwise_stabilizer",
    "stabilizer_in_coset",
    "coset_meet",
    "coset_union",
    "restricted_coset_intersection",
    "orbit_with_witness",
]


_ID_IMAGES = {}


def _id_image(n):
    img = _ID_IMAGES.get(n)
    if img is None:
        img = tuple(range(n))
        _ID_IMAGES[n] = img
    return img


class Permutation:
    """Bijection on {0..n-1} stored as its image tuple."""

    __slots__ = ("image", "_inv")

    def __init__(self, image):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise ValueError("image is not a permutation of 0..n-1")
        self.image = image
        self._inv = None

    @classmethod
    def _unchecked(cls, image):
        p = object.__new__(cls)
        p.image = image
        p._inv = None
        return p

    @classmethod
    def identity(cls, degree):
        return cls._unchecked(_id_image(degree))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Permutation from 0-based disjoint cycles."""
        image = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if x in seen:
                    raise ValueError(f"point {x} repeated across cycles")
                seen.add(x)
            for i, x in enumerate(cyc):
                image[x] = cyc[(i + 1) % len(cyc)]
        return cls(image)

    @classmethod
    def from_cycle_string(cls, text, degree, one_based=True):
        """Parse disjoint-cycle notation like "(1 2)(3 4)" or "()"."""
        text = text.strip()
        if text in ("", "()", "id"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        shift = 1 if one_based else 0
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            entries = [s for s in re.split(r"[,\s]+", body.strip()) if s]
            if not entries:
                continue
            cyc = [int(s) - shift for s in entries]
            if any(x < 0 or x >= degree for x in cyc):
                raise ValueError(f"cycle entry out of range in {text!r}")
            cycles.append(cyc)
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self):
        return len(self.image)

    def apply(self, point):
        return self.image[point]

    __call__ = apply

    def of_tuple(self, points):
        return tuple(self.image[x] for x in points)

    def of_set(self, points):
        return frozenset(self.image[x] for x in points)

    def __mul__(self, other):
        # apply self first, then other
        return Permutation._unchecked(tuple(map(other.image.__getitem__, self.image)))

    def inverse(self):
        inv = self._inv
        if inv is None:
            out = [0] * len(self.image)
            for i, j in enumerate(self.image):
                out[j] = i
            inv = Permutation._unchecked(tuple(out))
            inv._inv = self
            self._inv = inv
        return inv

    def is_identity(self):
        return self.image == _id_image(len(self.image))

    def first_moved(self):
        for i, j in enumerate(self.image):
            if i != j:
                return i
        raise ValueError("identity moves no point")

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its minimum, sorted."""
        seen = [False] * len(self.image)
        out = []
        for s in range(len(self.image)):
            if seen[s] or self.image[s] == s:
                seen[s] = True
                continue
            cyc = []
            x = s
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.image[x]
            out.append(cyc)
        return out

    def cycle_string(self, one_based=True):
        shift = 1 if one_based else 0
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x + shift) for x in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Permutation({self.cycle_string(one_based=False)}, n={self.degree})"


def _first_moved(g):
    fm = getattr(g, "first_moved", None)
    if fm is not None:
        return fm()
    for p in range(g.degree):
        if g.apply(p) != p:
            return p
    raise ValueError("identity moves no point")


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point, gens, transversal):
        self.point = point
        self.gens = gens
        self.transversal = transversal


class PermutationGroup:
    """Permutation group with base and strong generating set.

    Built by a deterministic Schreier-Sims procedure: base points are
    picked greedily as the first point moved by the residue that created
    the level, generators are only installed when sifting leaves a
    non-identity residue, and transversals are breadth-first, so the
    whole structure is reproducible for a fixed generator order.
    """

    def __init__(self, generators, *, identity=None, base_prefix=()):
        generators = list(generators)
        if identity is None:
            if not generators:
                raise ValueError("need an identity element when no generators given")
            g = generators[0]
            identity = g * g.inverse()
        self.identity = identity
        self._levels = [_Level(b, [], {b: identity}) for b in base_prefix]
        self._rebased = {}
        self._meets = {}
        for g in generators:
            self._add_generator(g)

    def rebased(self, base_prefix):
        """This group with its chain rebuilt along the given base prefix.

        Cached per prefix; only sound because groups are never extended
        after construction.
        """
        base_prefix = tuple(base_prefix)
        hit = self._rebased.get(base_prefix)
        if hit is None:
            hit = PermutationGroup(
                self.strong_generators, identity=self.identity, base_prefix=base_prefix
            )
            self._rebased[base_prefix] = hit
        return hit

    # ---------- queries ----------

    @property
    def degree(self):
        return self.identity.degree

    @property
    def base(self):
        return [lvl.point for lvl in self._levels]

    @property
    def strong_generators(self):
        return [g for lvl in self._levels for g in lvl.gens]

    generators = strong_generators

    @property
    def transversals(self):
        return [dict(lvl.transversal) for lvl in self._levels]

    def order(self):
        n = 1
        for lvl in self._levels:
            n *= len(lvl.transversal)
        return n

    def is_trivial(self):
        return all(len(lvl.transversal) == 1 for lvl in self._levels)

    def sift(self, p):
        """Residue of p after stripping through the transversal chain."""
        return self._sift(p)[0]

    def contains(self, p):
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        return self.sift(p).is_identity()

    def __contains__(self, p):
        return self.contains(p)

    def __repr__(self):
        return f"PermutationGroup(order={self.order()}, degree={self.degree})"

    # ---------- construction ----------

    def _sift(self, p, start=0):
        for i in range(start, len(self._levels)):
            lvl = self._levels[i]
            delta = p.apply(lvl.point)
            u = lvl.transversal.get(delta)
            if u is None:
                return p, i
            p = p * u.inverse()
        return p, len(self._levels)

    def _gens_from(self, i):
        return [g for lvl in self._levels[i:] for g in lvl.gens]

    def _rebuild_transversal(self, i):
        lvl = self._levels[i]
        gens = self._gens_from(i)
        trans = {lvl.point: self.identity}
        queue = deque([lvl.point])
        while queue:
            delta = queue.popleft()
            u = trans[delta]
            for s in gens:
                gamma = s.apply(delta)
                if gamma not in trans:
                    trans[gamma] = u * s
                    queue.append(gamma)
        lvl.transversal = trans

    def _install_raw(self, g, i):
        if i == len(self._levels):
            self._levels.append(_Level(_first_moved(g), [g], {}))
        else:
            self._levels[i].gens.append(g)

    def _add_generator(self, g):
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        res, i = self._sift(g)
        if res.is_identity():
            return False
        self._install_raw(res, i)
        for d in range(i, -1, -1):
            self._close(d)
        return True

    def _close(self, t):
        """Restore the chain property at level t; deeper levels stay valid."""
        while True:
            self._rebuild_transversal(t)
            lvl = self._levels[t]
            gens = self._gens_from(t)
            found = None
            for delta in list(lvl.transversal):
                u = lvl.transversal[delta]
                for s in gens:
                    gamma = s.apply(delta)
                    sg = (u * s) * lvl.transversal[gamma].inverse()
                    if sg.is_identity():
                        continue
                    res, j = self._sift(sg, t + 1)
                    if not res.is_identity():
                        found = (res, j)
                        break
                if found:
                    break
            if found is None:
                return
            res, j = found
            self._install_raw(res, j)
            for d in range(j, t, -1):
                self._close(d)


@dataclass(frozen=True)
class PermutationCoset:
    """Right coset {g * representative : g in group}; emptiness is explicit."""

    group: PermutationGroup | None
    representative: object | None
    empty: bool = False

    def __post_init__(self):
        if not self.empty and (self.group is None or self.representative is None):
            raise ValueError("non-empty coset needs a group and a representative")

    @classmethod
    def empty_coset(cls):
        return cls(None, None, True)

    def size(self):
        return 0 if self.empty else self.group.order()

    def contains(self, p):
        if self.empty:
            return False
        if not self.group._levels:
            return p == self.representative
        return self.group.contains(p * self.representative.inverse())

    def __repr__(self):
        if self.empty:
            return "PermutationCoset(empty)"
        return f"PermutationCoset(size={self.size()})"


# ---------- module-level operations ----------


def build_group(generators, *, degree=None, identity=None, base_prefix=()):
    """Group generated by the given elements.

    For dense permutations with an empty generator list, pass degree so
    the identity can be constructed.
    """
    generators = list(generators)
    if identity is None and not generators:
        if degree is None:
            raise ValueError("empty generating set needs degree or identity")
        identity = Permutation.identity(degree)
    return PermutationGroup(generators, identity=identity, base_prefix=base_prefix)


def group_order(group):
    return group.order()


def orbit_with_witness(group, x, action=None):
    """Orbit of x under the group, as {point: witness} with witness(x) = point.

    x may be an int (natural action), a tuple, or a frozenset; any other
    action is supplied as a callable (element, point) -> point.
    """
    if action is None:
        if isinstance(x, int):
            action = lambda g, p: g.apply(p)
        elif isinstance(x, tuple):
            action = lambda g, p: g.of_tuple(p)
        elif isinstance(x, frozenset):
            action = lambda g, p: g.of_set(p)
        else:
            raise TypeError("supply an action for this point type")
    gens = group.generators
    wit = {x: group.identity}
    queue = deque([x])
    while queue:
        z = queue.popleft()
        w = wit[z]
        for s in gens:
            y = action(s, z)
            if y not in wit:
                wit[y] = w * s
                queue.append(y)
    return wit


def pointwise_stabilizer(group, points):
    """Subgroup fixing every listed point."""
    pts = sorted(set(points))
    if not pts:
        return group
    rebased = PermutationGroup(
        group.strong_generators, identity=group.identity, base_prefix=pts
    )
    tail = rebased._gens_from(len(pts))
    return PermutationGroup(tail, identity=group.identity)


def stabilizer_in_coset(coset, alpha, beta):
    """Subcoset of elements mapping alpha to beta.

    A transversal lookup composed with the point stabilizer; no search.
    """
    if coset.empty:
        return coset
    group, sigma = coset.group, coset.representative
    gamma = sigma.inverse().apply(beta)
    orbit = orbit_with_witness(group, alpha)
    u = orbit.get(gamma)
    if u is None:
        return PermutationCoset.empty_coset()
    stab = pointwise_stabilizer(group, [alpha])
    return PermutationCoset(stab, u * sigma)


def coset_union(cosets):
    """Coset covering a union of cosets that is known to be one coset.

    The representative comes from the first non-empty input; the group is
    generated by all input groups together with the pairwise quotients of
    representatives.
    """
    live = [c for c in cosets if not c.empty]
    if not live:
        return PermutationCoset.empty_coset()
    if len(live) == 1:
        return live[0]
    rep = live[0].representative
    rep_inv = rep.inverse()
    gens = []
    seen = set()
    for c in live:
        for g in c.group.generators:
            if g not in seen:
                seen.add(g)
                gens.append(g)
    for c in live[1:]:
        g = c.representative * rep_inv
        if g not in seen:
            seen.add(g)
            gens.append(g)
    group = PermutationGroup(gens, identity=live[0].group.identity)
    out = PermutationCoset(group, rep)
    assert all(out.contains(c.representative) for c in live)
    return out


# ---------- products of listed groups ----------


class ListedProduct:
    """Direct product of explicitly listed groups on disjoint point classes.

    colors is a sequence of (points, elements) pairs: points are global
    integers (their order fixes local indexing) and elements are local
    image tuples forming a group on those points, identity included.
    """

    def __init__(self, colors):
        self.classes = []
        self.elements = []
        self.index = []
        self.id_index = []
        self.inv_index = []
        self._mul = []
        self._locate = {}
        for c, (points, elems) in enumerate(colors):
            points = tuple(points)
            size = len(points)
            elems = [tuple(e) for e in elems]
            if not elems:
                raise ValueError(f"color {c} has no listed elements")
            idx = {}
            for i, e in enumerate(elems):
                if len(e) != size or sorted(e) != list(range(size)):
                    raise ValueError(f"listed element {e} is not a permutation of color {c}")
                if e in idx:
                    raise ValueError(f"duplicate listed element in color {c}")
                idx[e] = i
            ident = tuple(range(size))
            if ident not in idx:
                raise ValueError(f"identity missing from listed group of color {c}")
            inv = []
            for e in elems:
                einv = [0] * size
                for a, b in enumerate(e):
                    einv[b] = a
                j = idx.get(tuple(einv))
                if j is None:
                    raise ValueError(f"listed set of color {c} is not inverse-closed")
                inv.append(j)
            for pos, x in enumerate(points):
                if x in self._locate:
                    raise ValueError(f"point {x} appears in two colors")
                self._locate[x] = (c, pos)
            self.classes.append(points)
            self.elements.append(elems)
            self.index.append(idx)
            self.id_index.append(idx[ident])
            self.inv_index.append(inv)
            self._mul.append({})
        self.num_colors = len(self.classes)
        covered = [x for pts in self.classes for x in pts]
        if any(x < 0 for x in covered):
            raise ValueError("points must be non-negative integers")
        self.degree = max(covered) + 1 if covered else 0
        self.id_tuple = tuple(self.id_index)

    def identity_perm(self):
        return ProductPermutation(self, self.id_tuple)

    def mul(self, c, i, j):
        """Index of elements[c][i] followed by elements[c][j]."""
        if i == self.id_index[c]:
            return j
        if j == self.id_index[c]:
            return i
        memo = self._mul[c]
        key = (i, j)
        out = memo.get(key)
        if out is None:
            ei = self.elements[c][i]
            ej = self.elements[c][j]
            composed = tuple(ej[x] for x in ei)
            out = self.index[c].get(composed)
            if out is None:
                raise ValueError(f"listed set of color {c} is not closed under composition")
            memo[key] = out
        return out

    def perm_from_global(self, p):
        """Convert a global permutation, rejecting it if any restriction
        falls outside the listed group of its color."""
        if isinstance(p, ProductPermutation) and p.system is self:
            return p
        idx = []
        for c, points in enumerate(self.classes):
            img = []
            for x in points:
                y = p.apply(x)
                loc = self._locate.get(y)
                if loc is None or loc[0] != c:
                    raise ValueError(
                        f"element maps point {x} outside its color class"
                    )
                img.append(loc[1])
            i = self.index[c].get(tuple(img))
            if i is None:
                raise ValueError(
                    f"element restricted to color {c} is not in the listed group"
                )
            idx.append(i)
        for x in range(p.degree):
            if x not in self._locate and p.apply(x) != x:
                raise ValueError(f"element moves point {x} outside every color class")
        return ProductPermutation(self, tuple(idx))

    def to_dense(self, pp, degree=None):
        """Dense Permutation realizing a product element on the global points.

        Dense permutations pass through, padded or trimmed to the target
        degree (trimming requires the removed points to be fixed).
        """
        n = self.degree if degree is None else degree
        if isinstance(pp, Permutation):
            if pp.degree == n:
                return pp
            if pp.degree < n:
                return Permutation._unchecked(pp.image + tuple(range(pp.degree, n)))
            if any(pp.image[x] != x for x in range(n, pp.degree)):
                raise ValueError("trimmed points must be fixed")
            return Permutation._unchecked(pp.image[:n])
        image = list(range(n))
        for c, points in enumerate(self.classes):
            elem = self.elements[c][pp.idx[c]]
            for pos, x in enumerate(points):
                image[x] = points[elem[pos]]
        return Permutation(image)


class ProductPermutation:
    """Element of a ListedProduct, stored as per-color element indices."""

    __slots__ = ("system", "idx")

    def __init__(self, system, idx):
        self.system = system
        self.idx = idx

    @property
    def degree(self):
        return self.system.degree

    def apply(self, point):
        loc = self.system._locate.get(point)
        if loc is None:
            return point
        c, pos = loc
        elem = self.system.elements[c][self.idx[c]]
        return self.system.classes[c][elem[pos]]

    __call__ = apply

    def of_tuple(self, points):
        return tuple(self.apply(x) for x in points)

    def of_set(self, points):
        return frozenset(self.apply(x) for x in points)

    def __mul__(self, other):
        sys = self.system
        if other.system is not sys:
            raise ValueError("product elements from different systems")
        idx = tuple(
            sys.mul(c, i, j) for c, (i, j) in enumerate(zip(self.idx, other.idx))
        )
        return ProductPermutation(sys, idx)

    def inverse(self):
        sys = self.system
        return ProductPermutation(
            sys, tuple(sys.inv_index[c][i] for c, i in enumerate(self.idx))
        )

    def is_identity(self):
        return self.idx == self.system.id_tuple

    def first_moved(self):
        sys = self.system
        best = None
        for c, i in enumerate(self.idx):
            if i == sys.id_index[c]:
                continue
            elem = sys.elements[c][i]
            points = sys.classes[c]
            local = min(points[pos] for pos, q in enumerate(elem) if q != pos)
            if best is None or local < best:
                best = local
        if best is None:
            raise ValueError("identity moves no point")
        return best

    def __eq__(self, other):
        return (
            isinstance(other, ProductPermutation)
            and other.system is self.system
            and other.idx == self.idx
        )

    def __hash__(self):
        return hash(self.idx)

    def __repr__(self):
        return f"ProductPermutation(idx={self.idx})"


def _first_in_coset(g1, g2, tau):
    """First element of g1 lying in the right coset g2 * tau, or None.

    Depth-first walk over g1's stabilizer chain.  Choosing transversal
    entries top down fixes the images of g1's base points one at a time,
    and each partial image tuple is checked for consistency against g2's
    chain rebased along the same points: h lies in g2 * tau exactly when
    h * tau^-1 lies in g2, which forces h2(b_i) = tau^-1(h(b_i)) for a
    member h2 of g2.  Surviving leaves are confirmed by one sift.
    """
    tau_inv = tau.inverse()
    levels1 = g1._levels
    k = len(levels1)
    if k == 0:
        return g1.identity if g2.contains(tau_inv) else None
    rebased = g2.rebased(g1.base)
    trans2 = [rebased._levels[i].transversal for i in range(k)]
    # frames carry (level, prefix, walk): prefix is the partial element of
    # g1 (deepest transversal entry applied first), so the image of base
    # point i under any completion is prefix(delta_i); walk accumulates the
    # inverses of the g2 transversal entries consumed so far.
    stack = [(0, g1.identity, g1.identity)]
    while stack:
        i, prefix, walk = stack.pop()
        if i == k:
            if g2.contains(prefix * tau_inv):
                return prefix
            continue
        t2i = trans2[i]
        for delta, u in levels1[i].transversal.items():
            target = walk.apply(tau_inv.apply(prefix.apply(delta)))
            v = t2i.get(target)
            if v is not None:
                stack.append((i + 1, u * prefix, walk * v.inverse()))
    return None


def _intersect_groups(g1, g2):
    """Subgroup g1 intersect g2, with a chain along g1's base.

    Works bottom up over g1's stabilizer chain.  At level l the partial
    intersection already stabilizes the base prefix b_0..b_(l-1); for
    each point beta reachable from b_l that the partial intersection
    cannot yet reach, one depth-first search looks for a witness fixing
    the prefix and sending b_l to beta while staying consistent with
    g2's rebased chain.  Each witness found is sifted in, which grows
    the level-l orbit and lets later candidates be skipped, so the work
    scales with the number of strong generators rather than the order
    of the intersection.  Results are cached per group pair.
    """
    hit = g1._meets.get(id(g2))
    if hit is not None:
        return hit[1]
    base = g1.base
    k = len(base)
    meet = PermutationGroup([], identity=g1.identity, base_prefix=base)
    if k:
        levels1 = g1._levels
        rebased = g2.rebased(base)
        trans2 = [rebased._levels[i].transversal for i in range(k)]
        for l in range(k - 1, -1, -1):
            b = base[l]
            for beta in sorted(levels1[l].transversal):
                # a witness for any point in the current orbit of b_l
                # composes with a known element into one for beta, so
                # only orbit representatives need a search
                if beta == b or beta in meet._levels[l].transversal:
                    continue
                v0 = trans2[l].get(beta)
                if v0 is None:
                    continue
                found = None
                stack = [(l + 1, levels1[l].transversal[beta], v0.inverse())]
                while stack and found is None:
                    i, prefix, walk = stack.pop()
                    if i == k:
                        if g2.contains(prefix):
                            found = prefix
                        continue
                    t2i = trans2[i]
                    for delta, u in levels1[i].transversal.items():
                        target = walk.apply(prefix.apply(delta))
                        v = t2i.get(target)
                        if v is not None:
                            stack.append((i + 1, u * prefix, walk * v.inverse()))
                if found is not None:
                    meet._add_generator(found)
    # pin g2 so the id key cannot be recycled while the cache lives
    g1._meets[id(g2)] = (g2, meet)
    return meet


def _coset_meet(group1, rep1, group2, rep2):
    """Intersection of right cosets group1*rep1 and group2*rep2.

    Returns (group, representative) of the meet, or None when it is
    empty.  The smaller group is used as the search side.
    """
    if group1.order() > group2.order():
        group1, rep1, group2, rep2 = group2, rep2, group1, rep1
    # x = h * rep1 lies in both cosets iff h is in group1 and group2 * tau
    tau = rep2 * rep1.inverse()
    c0 = _first_in_coset(group1, group2, tau)
    if c0 is None:
        return None
    return _intersect_groups(group1, group2), c0 * rep1


def _coset_contains_coset(big, small):
    """Whether every element of the small coset lies in the big one."""
    return big.contains(small.representative) and all(
        big.group.contains(g) for g in small.group.generators
    )


def coset_meet(coset1, coset2):
    """Intersection of two right cosets over a shared domain.

    No membership validation is applied to the inputs; callers that need
    the listed-product restriction checked should go through
    restricted_coset_intersection.  When one coset contains the other,
    the smaller input object is returned as is.
    """
    if coset1.empty or coset2.empty:
        return PermutationCoset.empty_coset()
    if coset1.group.order() > coset2.group.order():
        coset1, coset2 = coset2, coset1
    if _coset_contains_coset(coset2, coset1):
        return coset1
    meet = _coset_meet(
        coset1.group, coset1.representative, coset2.group, coset2.representative
    )
    if meet is None:
        return PermutationCoset.empty_coset()
    group, rep = meet
    return PermutationCoset(group, rep)


def restricted_coset_intersection(group1, rep1, group2, rep2, colors):
    """Intersection of two cosets inside a product of listed groups.

    Both cosets must consist of elements whose restriction to every color
    class lies in that class's listed group; violations are rejected.
    The result is returned over the same element kind as the inputs
    (dense permutations in, dense permutations out).
    """
    system = colors if isinstance(colors, ListedProduct) else ListedProduct(colors)
    dense_io = not isinstance(rep1, ProductPermutation)

    a_gens = [system.perm_from_global(g) for g in group1.generators]
    b_gens = [system.perm_from_global(g) for g in group2.generators]
    pa = system.perm_from_global(rep1)
    pb = system.perm_from_global(rep2)
    ident = system.identity_perm()

    if dense_io:
        n = max(rep1.degree, rep2.degree, group1.degree, group2.degree)
        h1, h2, r1, r2 = group1, group2, rep1, rep2
        if min(rep1.degree, rep2.degree, group1.degree, group2.degree) != n:
            idn = Permutation.identity(n)
            h1 = build_group([system.to_dense(g, n) for g in h1.generators], identity=idn)
            h2 = build_group([system.to_dense(g, n) for g in h2.generators], identity=idn)
            r1 = system.to_dense(r1, n)
            r2 = system.to_dense(r2, n)
        meet = _coset_meet(h1, r1, h2, r2)
        if meet is None:
            return PermutationCoset.empty_coset()
        group, rep = meet
        return PermutationCoset(group, rep)

    h1 = PermutationGroup(a_gens, identity=ident)
    h2 = PermutationGroup(b_gens, identity=ident)
    meet = _coset_meet(h1, pa, h2, pb)
    if meet is None:
        return PermutationCoset.empty_coset()
    group, rep = meet
    return PermutationCoset(group, rep)
