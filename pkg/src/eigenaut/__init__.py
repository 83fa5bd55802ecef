"""Graph automorphism groups and isomorphism testing via eigenspace geometry.

The pipeline decomposes the adjacency spectrum, projects a derived point
set into each eigenspace, lists the geometric symmetries of every
projection, and combines them with a coset dynamic program over
explicitly listed groups.  Emitted generators are verified exactly in
integer arithmetic.
"""

from .graphs import Graph
from .permgroup import Permutation, PermutationCoset, PermutationGroup
from .pipeline import (
    AutResult,
    IsoResult,
    automorphism_group,
    isomorphic,
    isomorphism_witness,
)

__all__ = [
    "Graph",
    "Permutation",
    "PermutationGroup",
    "PermutationCoset",
    "AutResult",
    "IsoResult",
    "automorphism_group",
    "isomorphic",
    "isomorphism_witness",
]

__version__ = "0.1.0"
