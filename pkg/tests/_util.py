"""Small reference helpers used across test modules.

Everything here enumerates naively so tests can compare against the
structured implementations.
"""

from __future__ import annotations

from itertools import permutations


def close_images(gens, degree, limit=100_000):
    """Closure of a set of image tuples under composition."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[x] for x in p)
                if q not in seen:
                    if len(seen) >= limit:
                        raise RuntimeError("closure too large for a test helper")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def group_images(group):
    """Element set of a PermutationGroup, via closure of its generators."""
    degree = group.degree
    gens = [tuple(g.apply(x) for x in range(degree)) for g in group.generators]
    return close_images(gens, degree)


def random_perm_images(rng, degree, count):
    out = []
    for _ in range(count):
        img = list(range(degree))
        rng.shuffle(img)
        out.append(tuple(img))
    return out


def random_subgroup_images(rng, degree, max_order, tries=50):
    """Closure of random elements, resampled until the order fits."""
    for _ in range(tries):
        gens = random_perm_images(rng, degree, rng.randint(1, 2))
        try:
            elems = close_images(gens, degree, limit=max_order + 1)
        except RuntimeError:
            continue
        if len(elems) <= max_order:
            return sorted(elems)
    return [tuple(range(degree))]


def all_images(degree):
    return [tuple(p) for p in permutations(range(degree))]
