"""Shared helpers: random position generators and independent oracles.

The oracles work on plain frozensets of vertex-name sets and never touch
the package's mask representation, canonicalization or component
decomposition, so they stay independent of the paths they check.
"""

from __future__ import annotations

import random
from itertools import permutations

import pytest

from takeaway import Complex, make_complex
from takeaway.complexes import iter_bits

SEED = 1729

DISK_FACETS = [
    [1, 2, 6], [1, 3, 7], [1, 2, 8], [1, 3, 8], [2, 4, 6], [2, 4, 8],
    [4, 6, 8], [3, 5, 7], [3, 5, 8], [5, 7, 8], [6, 7, 8],
]


def random_complex(rng: random.Random, max_vertices: int,
                   max_facets: int | None = None) -> Complex:
    nv = rng.randint(1, max_vertices)
    nf = rng.randint(1, max_facets or nv + 2)
    masks = [rng.randrange(1, 1 << nv) for _ in range(nf)]
    return make_complex(
        [[str(i + 1) for i in iter_bits(m)] for m in masks]
    )


def relabeled(x: Complex, rng: random.Random) -> Complex:
    """The same position under a random vertex permutation and facet order."""
    names = list(x.vertices)
    shuffled = names[:]
    rng.shuffle(shuffled)
    mapping = dict(zip(names, shuffled))
    rows = [[mapping[n] for n in facet] for facet in x.facet_names()]
    rng.shuffle(rows)
    return make_complex(rows)


def face_family(x: Complex) -> frozenset[frozenset[str]]:
    return frozenset(frozenset(x.face_names(m)) for m in x.faces())


def naive_grundy(x: Complex, memo: dict | None = None) -> int:
    """Direct mex recursion on name sets; no canonical forms, no splitting."""
    if memo is None:
        memo = {}

    def rec(faces: frozenset[frozenset[str]]) -> int:
        if not faces:
            return 0
        known = memo.get(faces)
        if known is not None:
            return known
        vals = set()
        for m in faces:
            vals.add(rec(frozenset(t for t in faces if not m <= t)))
        g = 0
        while g in vals:
            g += 1
        memo[faces] = g
        return g

    return rec(face_family(x))


def naive_wins(x: Complex) -> bool:
    """Memoless negamax: the mover wins iff some move leaves a lost position."""

    def rec(faces: frozenset[frozenset[str]]) -> bool:
        for m in faces:
            if not rec(frozenset(t for t in faces if not m <= t)):
                return True
        return False

    return rec(face_family(x))


def brute_isomorphic(a: Complex, b: Complex) -> bool:
    """Try every vertex bijection and compare facet families."""
    if a.n_vertices != b.n_vertices or len(a.facets) != len(b.facets):
        return False
    target = {frozenset(names) for names in b.facet_names()}
    a_facets = [tuple(names) for names in a.facet_names()]
    for perm in permutations(b.vertices):
        mapping = dict(zip(a.vertices, perm))
        if {frozenset(mapping[n] for n in f) for f in a_facets} == target:
            return True
    return False


def all_complexes_on(n: int) -> list[Complex]:
    """Every simplicial complex on at most n named vertices.

    Enumerated as antichains of non-empty subsets of {1..n}; unused
    vertices drop out of the built complex.
    """
    masks = list(range(1, 1 << n))
    out: list[Complex] = [make_complex([])]

    def extend(start: int, chosen: list[int]) -> None:
        for i in range(start, len(masks)):
            m = masks[i]
            if any(m & c == m or m & c == c for c in chosen):
                continue
            chosen.append(m)
            out.append(make_complex(
                [[str(v + 1) for v in iter_bits(mask)] for mask in chosen]
            ))
            extend(i + 1, chosen)
            chosen.pop()

    extend(0, [])
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)
