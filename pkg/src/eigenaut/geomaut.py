"""Explicit listing of geometric automorphisms of a projected point set.

A permutation of the points is geometric when it preserves all norms and
pairwise distances.  By polarization this is equivalent to preserving
the Gram matrix, so the search quantizes inner products to integer keys
and enumerates key-preserving permutations by backtracking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapExceeded, ToleranceError
from .permgroup import Permutation, PermutationGroup

DEFAULT_GRAM_TOL = 1e-6
DEFAULT_CAP = 10**6


def default_gram_tol():
    return DEFAULT_GRAM_TOL


@dataclass(frozen=True)
class QuantizedGram:
    """Integer quantization keys of all pairwise inner products."""

    size: int
    keys: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class GeometricAutomorphismList:
    """All Gram-preserving permutations of one projected point set."""

    space_index: int
    elements: tuple
    group: PermutationGroup

    @property
    def order(self):
        return len(self.elements)


def quantized_gram(points, gram_tol=None):
    """Integer keys for all pairwise inner products by gap clustering.

    The sorted products are linked into clusters wherever the gap to
    the next value is at most gram_tol/1000, and keys number the
    clusters in increasing value order, so products that agree to
    working precision can never receive distinct keys.  Unrelated
    products that land closer than the link radius merge too; that only
    enlarges the candidate search and the exact verification downstream
    discards the extras.  A guard rejects clusters chained across more
    than gram_tol/100, where borderline links would make key equality
    an accident of spacing; a tighter tolerance usually resolves them.
    """
    if gram_tol is None:
        gram_tol = DEFAULT_GRAM_TOL
    if gram_tol <= 0.0:
        raise ValueError("gram_tol must be positive")
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-d array")
    m = pts.shape[0]
    vals = (pts @ pts.T).ravel()
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    flat = np.zeros(m * m, dtype=np.int64)
    if sv.size > 1:
        eq_radius = gram_tol / 1000.0
        span_radius = gram_tol / 100.0
        boundary = np.diff(sv) > eq_radius
        cluster = np.zeros(sv.size, dtype=np.int64)
        cluster[1:] = np.cumsum(boundary)
        starts = np.flatnonzero(np.r_[True, boundary])
        ends = np.r_[starts[1:], sv.size] - 1
        chains = int(np.count_nonzero(sv[ends] - sv[starts] > span_radius))
        if chains:
            raise ToleranceError(
                f"gram quantization guard failed: {chains} linked product "
                f"runs span more than {span_radius:.1e} though consecutive "
                f"gaps stay under {eq_radius:.1e}; adjust the gram tolerance"
            )
        flat[order] = cluster
    return QuantizedGram(size=m, keys=flat.reshape(m, m))


def _row_classes(keys):
    """Class ids by (diagonal key, sorted row multiset); equal rows share ids."""
    m = keys.shape[0]
    sorted_rows = np.sort(keys, axis=1)
    fp = {}
    classes = []
    for i in range(m):
        key = (int(keys[i, i]), sorted_rows[i].tobytes())
        classes.append(fp.setdefault(key, len(fp)))
    return classes


def list_geometric_automorphisms(gram, cap=None, space_index=0):
    """Enumerate every key-preserving permutation, up to cap elements.

    Raises CapExceeded when the full list would not fit under cap; the
    all-keys-uniform case (edgeless-style inputs, group = full symmetric
    group) is detected up front so the failure is immediate.
    """
    if cap is None:
        cap = DEFAULT_CAP
    if cap < 1:
        raise ValueError("cap must be at least 1")
    m = gram.size
    if m == 0:
        return _finalize(space_index, (Permutation(()),), 0)
    keys = gram.keys
    diag = np.diag(keys)
    offdiag_uniform = True
    if m > 1:
        off_mask = ~np.eye(m, dtype=bool)
        off_vals = keys[off_mask]
        offdiag_uniform = bool(np.all(off_vals == off_vals[0]))
    if bool(np.all(diag == diag[0])) and offdiag_uniform:
        total = math.factorial(m)
        if total > cap:
            raise CapExceeded(
                f"geometric automorphism group is the full symmetric group on "
                f"{m} points ({total} elements), above the listing cap {cap}",
                size=total,
                cap=cap,
            )
        elements = tuple(Permutation(img) for img in itertools.permutations(range(m)))
        return _finalize(space_index, elements, m)
    classes = _row_classes(keys)
    class_size = {}
    for c in classes:
        class_size[c] = class_size.get(c, 0) + 1
    order = sorted(range(m), key=lambda i: (class_size[classes[i]], classes[i], i))
    found, capped = kernels.gram_aut_search(keys, classes, order, int(cap))
    if capped:
        raise CapExceeded(
            f"geometric automorphism listing exceeded the cap {cap}",
            size=None,
            cap=cap,
        )
    elements = tuple(Permutation(img) for img in sorted(found))
    return _finalize(space_index, elements, m)


def _finalize(space_index, elements, m):
    identity = Permutation(tuple(range(m)))
    group = PermutationGroup([p for p in elements if not p.is_identity()], identity=identity)
    # the listing is the whole group, so the two orders must agree
    assert group.order() == len(elements)
    return GeometricAutomorphismList(space_index=space_index, elements=tuple(sorted(elements, key=lambda p: p.image)), group=group)


def orthogonal_extension(points, perm, tol=1e-6):
    """The orthogonal map sending each point to its image under perm.

    Acts as the solved linear map on the span of the points and as the
    identity on its orthogonal complement, so the result is square
    orthogonal in ambient dimension.  Raises ToleranceError when the
    residual or orthogonality check fails, which signals that perm was
    not a true geometric automorphism.
    """
    pts = np.asarray(points, dtype=np.float64)
    m, d = pts.shape
    img = np.asarray([perm(i) for i in range(m)], dtype=int)
    target = pts[img]
    u, s, vt = np.linalg.svd(pts, full_matrices=False)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > 1e-12 * scale * max(m, d)))
    basis = vt[:rank]
    coords = pts @ basis.T
    coords_img = target @ basis.T
    sol, *_ = np.linalg.lstsq(coords, coords_img, rcond=None)
    mat_span = basis.T @ sol.T @ basis
    a = mat_span + (np.eye(d) - basis.T @ basis)
    residual = float(np.max(np.linalg.norm(pts @ a.T - target, axis=1))) if m else 0.0
    ortho = float(np.linalg.norm(a.T @ a - np.eye(d)))
    if residual > tol or ortho > tol:
        raise ToleranceError(
            f"no orthogonal extension: residual {residual:.3e}, "
            f"orthogonality defect {ortho:.3e} (tolerance {tol:.1e})"
        )
    return a
