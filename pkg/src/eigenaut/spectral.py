"""Eigendecomposition of adjacency matrices and grouping into eigenspaces.

The decomposition A = sum_l lambda_l P_l feeds the geometric stage: each
repeated eigenvalue contributes one orthogonal projector P_l = U_l U_l^T,
stored basis-free so that downstream results cannot depend on the
arbitrary eigenvector basis returned by the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import JacobiConvergenceError

DEFAULT_MAX_SWEEPS = 50


def default_sweep_tol(a):
    """Off-diagonal mass target: 1e-12 scaled by size and magnitude."""
    n = a.shape[0]
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    return 1e-12 * max(1, n) * max(1.0, amax)


def default_eig_tol(n):
    """Eigenvalue grouping tolerance: 1e-8 scaled by dimension."""
    return 1e-8 * max(1, n)


@dataclass(frozen=True)
class Eigenspace:
    """One grouped eigenvalue with its orthogonal projector."""

    eigenvalue: float
    multiplicity: int
    projector: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SpectralDecomposition:
    dimension: int
    spaces: tuple
    warnings: tuple = ()
    sweeps: int = 0
    offdiag: float = 0.0

    def multiplicities(self):
        return tuple(s.multiplicity for s in self.spaces)

    def eigenvalues(self):
        return tuple(s.eigenvalue for s in self.spaces)

    def grouped_spectrum(self):
        """(eigenvalue, multiplicity) pairs, eigenvalues descending."""
        return tuple((s.eigenvalue, s.multiplicity) for s in self.spaces)

    def reconstruction(self):
        a = np.zeros((self.dimension, self.dimension))
        for s in self.spaces:
            a += s.eigenvalue * s.projector
        return a


def _validate_symmetric(a):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    return a


def eigendecompose(a, sweep_tol=None, max_sweeps=DEFAULT_MAX_SWEEPS):
    """Full eigendecomposition via cyclic Jacobi.

    Returns (eigenvalues, eigenvector columns, sweeps, final off-diagonal
    mass).  Raises JacobiConvergenceError if the off-diagonal mass is
    still above sweep_tol after max_sweeps sweeps.
    """
    a = _validate_symmetric(a)
    if sweep_tol is None:
        sweep_tol = default_sweep_tol(a)
    if sweep_tol <= 0.0:
        raise ValueError("sweep_tol must be positive")
    w, v, sweeps, off = kernels.jacobi_cyclic(a, float(sweep_tol), int(max_sweeps))
    w = np.asarray(w, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if off > sweep_tol:
        raise JacobiConvergenceError(
            f"jacobi sweep limit {max_sweeps} reached with off-diagonal "
            f"mass {off:.3e} above tolerance {sweep_tol:.3e}"
        )
    return w, v, sweeps, off


def group_eigenvalues(w, v, eig_tol=None, sweeps=0, offdiag=0.0):
    """Cluster eigenvalues by single linkage and build projectors.

    Sorted descending; a new group starts whenever the gap to the
    previous eigenvalue exceeds eig_tol.  Gaps between groups smaller
    than 10x eig_tol are recorded as warnings since a perturbation of
    the tolerance could change the grouping.
    """
    w = np.asarray(w, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    n = w.shape[0]
    if eig_tol is None:
        eig_tol = default_eig_tol(n)
    if eig_tol <= 0.0:
        raise ValueError("eig_tol must be positive")
    order = np.argsort(-w, kind="stable")
    clusters = []
    for i in order:
        if clusters and clusters[-1] and w[clusters[-1][-1]] - w[i] <= eig_tol:
            clusters[-1].append(int(i))
        else:
            clusters.append([int(i)])
    warnings = []
    spaces = []
    for k, idx in enumerate(clusters):
        u = v[:, idx]
        proj = u @ u.T
        val = float(np.mean(w[idx]))
        spaces.append(Eigenspace(eigenvalue=val, multiplicity=len(idx), projector=proj))
        if k > 0:
            gap = float(w[clusters[k - 1][-1]] - w[idx[0]])
            if gap < 10.0 * eig_tol:
                warnings.append(
                    f"eigenvalue gap {gap:.3e} between groups {k - 1} and {k} "
                    f"is within 10x of grouping tolerance {eig_tol:.3e}"
                )
    return SpectralDecomposition(
        dimension=n,
        spaces=tuple(spaces),
        warnings=tuple(warnings),
        sweeps=sweeps,
        offdiag=offdiag,
    )


def decompose_adjacency(a, sweep_tol=None, eig_tol=None, max_sweeps=DEFAULT_MAX_SWEEPS):
    """Eigendecompose and group in one step."""
    w, v, sweeps, off = eigendecompose(a, sweep_tol=sweep_tol, max_sweeps=max_sweeps)
    return group_eigenvalues(w, v, eig_tol=eig_tol, sweeps=sweeps, offdiag=off)


def max_multiplicity(dec):
    """Largest eigenvalue multiplicity; 0 for the empty decomposition."""
    if not dec.spaces:
        return 0
    return max(s.multiplicity for s in dec.spaces)


def sorted_eigenvalues(dec):
    """All eigenvalues with repetition, descending."""
    out = []
    for s in dec.spaces:
        out.extend([s.eigenvalue] * s.multiplicity)
    return np.array(out)


def spectra_match(dec1, dec2, tol):
    """Whether two full spectra agree pairwise within tol.

    Used as a rejection pre-check: isomorphic graphs always pass since
    their true spectra coincide and the numerical error is far below
    any sensible tol.
    """
    if dec1.dimension != dec2.dimension:
        return False
    w1 = sorted_eigenvalues(dec1)
    w2 = sorted_eigenvalues(dec2)
    if w1.shape != w2.shape:
        return False
    if w1.size == 0:
        return True
    return bool(np.max(np.abs(w1 - w2)) <= tol)
