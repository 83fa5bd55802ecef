"""Kernel backend selection.

Prefers the compiled extension when it is importable and exposes the
expected entry points; otherwise falls back to the pure NumPy/Python
implementations.  Both backends satisfy identical contracts:

    jacobi_cyclic(a, sweep_tol, max_sweeps) -> (w, v, sweeps, off)
    gram_aut_search(keys, classes, order, cap) -> (perms, capped)
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

if _compiled is not None and hasattr(_compiled, "jacobi_cyclic") and hasattr(
    _compiled, "gram_aut_search"
):
    BACKEND = "compiled"
    jacobi_cyclic = _compiled.jacobi_cyclic
    gram_aut_search = _compiled.gram_aut_search
else:
    BACKEND = "python"
    jacobi_cyclic = _kernels_py.jacobi_cyclic
    gram_aut_search = _kernels_py.gram_aut_search


def backend_name():
    """Name of the backend in use, "compiled" or "python"."""
    return BACKEND
