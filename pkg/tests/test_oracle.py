"""Sanity checks for the brute-force reference implementations."""

import random

import pytest

from eigenaut.graphs import (
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)
from eigenaut.oracle import (
    brute_aut,
    brute_coset_meet,
    brute_geom_aut,
    brute_iso,
    coset_elements,
)
from eigenaut.permgroup import Permutation, PermutationCoset, build_group


def test_brute_aut_known_orders():
    assert len(brute_aut(complete_graph(3))) == 6
    assert len(brute_aut(path_graph(4))) == 2
    assert len(brute_aut(empty_graph(4))) == 24
    assert len(brute_aut(cycle_graph(5))) == 10
    assert len(brute_aut(star_graph(3))) == 6


def test_brute_aut_guard():
    with pytest.raises(ValueError):
        brute_aut(empty_graph(11))


def test_brute_iso_finds_relabeling():
    rng = random.Random(1)
    g = cycle_graph(5)
    img = list(range(5))
    rng.shuffle(img)
    h = g.relabel(img)
    w = brute_iso(g, h)
    assert w is not None
    assert all(h.has_edge(w[u], w[v]) for u, v in g.edges)


def test_brute_iso_rejects_and_is_lexicographic_first():
    assert brute_iso(complete_graph(3), path_graph(3)) is None
    w = brute_iso(path_graph(3), path_graph(3))
    assert w == (0, 1, 2)


def test_brute_geom_aut_square_and_line():
    # norm-preserving maps fix the origin, so the full dihedral group
    # survives only when the square is centered at the origin
    square = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    assert len(brute_geom_aut(square)) == 8
    line = [(-1.0,), (0.0,), (1.0,)]
    assert len(brute_geom_aut(line)) == 2
    generic = [(0.0, 0.0), (1.0, 0.0), (2.5, 0.3)]
    assert len(brute_geom_aut(generic)) == 1


def test_brute_coset_meet():
    h1 = build_group([Permutation.from_cycles([[0, 1]], 3)])
    h2 = build_group([Permutation.from_cycles([[1, 2]], 3)])
    ident = Permutation.identity(3)
    c1 = PermutationCoset(h1, ident)
    c2 = PermutationCoset(h2, ident)
    assert brute_coset_meet(c1, c2) == {(0, 1, 2)}
    shifted = PermutationCoset(h2, Permutation.from_cycles([[0, 1, 2]], 3))
    elems = coset_elements(shifted)
    assert len(elems) == 2
    assert brute_coset_meet(c1, shifted) == coset_elements(c1) & elems
