"""Pure NumPy/Python implementations of the two hot kernels.

Used when the compiled extension is unavailable; the compiled module
implements the same contracts with the same arithmetic.
"""

from __future__ import annotations

import math

import numpy as np


def _offdiag_norm(a):
    return float(np.sqrt(np.sum(np.square(a - np.diag(np.diag(a))))))


def jacobi_cyclic(a, sweep_tol, max_sweeps):
    """Cyclic-by-rows Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues, eigenvector columns, sweeps used, final
    off-diagonal Frobenius mass).  The caller decides whether the final
    mass is acceptable.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.float64)
    if n < 2:
        return np.diag(a).copy(), v, 0, 0.0
    off = _offdiag_norm(a)
    sweeps = 0
    while off > sweep_tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
        off = _offdiag_norm(a)
    return np.diag(a).copy(), v, sweeps, off


def gram_aut_search(keys, classes, order, cap):
    """Backtracking enumeration of permutations preserving a key matrix.

    keys: square integer matrix; classes: per-index class id restricting
    candidate images; order: source assignment order (rarest class
    first).  Stops as soon as more than cap permutations are found.

    Returns (list of image tuples, capped flag).
    """
    m = len(order)
    if m == 0:
        return [()], False
    K = [list(map(int, row)) for row in keys]
    members = {}
    for j, c in enumerate(classes):
        members.setdefault(c, []).append(j)
    image = [-1] * m
    used = [False] * m
    found = []
    cands = [None] * m
    ptr = [0] * m
    src = list(order)
    d = 0
    while True:
        if d == m:
            found.append(tuple(image))
            if len(found) > cap:
                return found, True
            d -= 1
            j = image[src[d]]
            used[j] = False
            image[src[d]] = -1
            ptr[d] += 1
            continue
        if cands[d] is None:
            s = int(src[d])
            Ks = K[s]
            ok = []
            for j in members[classes[s]]:
                if used[j]:
                    continue
                Kj = K[j]
                good = True
                for e in range(d):
                    t = src[e]
                    if Ks[t] != Kj[image[t]]:
                        good = False
                        break
                if good:
                    ok.append(j)
            cands[d] = ok
            ptr[d] = 0
        if ptr[d] >= len(cands[d]):
            cands[d] = None
            d -= 1
            if d < 0:
                break
            j = image[src[d]]
            used[j] = False
            image[src[d]] = -1
            ptr[d] += 1
            continue
        j = cands[d][ptr[d]]
        image[src[d]] = j
        used[j] = True
        d += 1
    return found, False
