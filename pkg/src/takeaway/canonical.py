"""Canonical labeling of positions up to vertex renaming.

The canonical form of a complex is the lexicographically least facet
encoding over all vertex relabelings consistent with an invariant
partition of the vertices.  The partition (facet-degree profiles refined
by iterated facet-signature hashing) only prunes the search, so keys
are exact: equal keys if and only if the complexes are isomorphic.
Cost is factorial in the largest symmetry class, which is fine for the
small instances this game produces.

Refinement signatures are order-independent hash sums; a hash collision
merges classes on both sides of any isomorphism alike, so it can only
enlarge the permutation search, never corrupt the result.
"""

from __future__ import annotations

import struct
from itertools import permutations, product

from .complexes import Complex, iter_bits

_M64 = (1 << 64) - 1


def _mix(x: int) -> int:
    # splitmix64 finalizer: deterministic, platform-independent
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def _stream(base: int) -> list[int]:
    return [_mix(base + i) for i in range(64)]


_H_SIZE = _stream(0x10000)
_H_COLOR = _stream(0x20000)
_H_COLOR2 = _stream(0x30000)
_H_FACET = _stream(0x40000)


def _ranked(values: list) -> list[int]:
    order = {c: i for i, c in enumerate(sorted(set(values)))}
    return [order[c] for c in values]


def _grow(stream: list[int], base: int, n: int) -> None:
    while len(stream) <= n:
        stream.append(_mix(base + len(stream)))


# Bit-index tuples for all masks on up to eight vertices; larger masks
# fall back to iter_bits.
_BITS: list[tuple[int, ...]] = []


def _bits_table() -> list[tuple[int, ...]]:
    global _BITS
    if not _BITS:
        tbl: list[tuple[int, ...]] = [()]
        for m in range(1, 1 << 8):
            low = m & -m
            tbl.append(tbl[m ^ low] + (low.bit_length() - 1,))
        _BITS = tbl
    return _BITS


# For up to four vertices, minimizing over the whole symmetric group via
# precomputed mask-translation tables beats partition refinement.
_BRUTE_LIMIT = 4
_TRANSLATIONS: dict[int, list[list[int]]] = {}


def _translation_tables(nv: int) -> list[list[int]]:
    tables = _TRANSLATIONS.get(nv)
    if tables is None:
        tables = []
        for perm in permutations(range(nv)):
            tbl = [0] * (1 << nv)
            for mask in range(1, 1 << nv):
                low = mask & -mask
                tbl[mask] = tbl[mask ^ low] | 1 << perm[low.bit_length() - 1]
            tables.append(tbl)
        _TRANSLATIONS[nv] = tables
    return tables


def canonical_facets(nv: int, facets: tuple[int, ...]) -> tuple[int, ...]:
    """Least facet-mask tuple over admissible relabelings of 0..nv-1."""
    if not facets:
        return ()
    if len(facets) == 1:
        # a reindexed single facet is the full mask: already canonical
        return facets
    if nv <= _BRUTE_LIMIT:
        best = None
        for tbl in _translation_tables(nv):
            enc = sorted(tbl[f] for f in facets)
            if best is None or enc < best:
                best = enc
        return tuple(best)

    if facets[-1] < 256:
        bits = _bits_table()
        members = [bits[f] for f in facets]
    else:
        members = [tuple(iter_bits(f)) for f in facets]
    nf = len(members)
    sizes = [len(m) for m in members]
    incident: list[list[int]] = [[] for _ in range(nv)]
    for i, mem in enumerate(members):
        for v in mem:
            incident[v].append(i)

    # invariant refinement: per-vertex facet-size profiles, then rounds of
    # facet signatures and vertex signatures until the partition stabilizes
    hsize = _H_SIZE
    if sizes and sizes[-1] >= len(hsize):
        _grow(hsize, 0x10000, max(sizes))
    colors = _ranked([sum(hsize[sizes[i]] for i in inc) for inc in incident])
    ncls = len(set(colors))
    hcolor, hcolor2, hfacet = _H_COLOR, _H_COLOR2, _H_FACET
    if nf >= len(hfacet):
        _grow(hfacet, 0x40000, nf)
    while ncls < nv:
        fsigs = [
            hsize[sizes[i]] + sum(hcolor[colors[v]] for v in members[i])
            for i in range(nf)
        ]
        forder = {c: r for r, c in enumerate(sorted(set(fsigs)))}
        vsigs = [
            hcolor2[colors[v]] + sum(hfacet[forder[fsigs[i]]] for i in incident[v])
            for v in range(nv)
        ]
        colors = _ranked(vsigs)
        n2 = len(set(colors))
        if n2 == ncls:
            break
        ncls = n2

    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    blocks = [classes[c] for c in sorted(classes)]

    mapping = [0] * nv
    if ncls == nv:
        idx = 0
        for b in blocks:
            mapping[b[0]] = idx
            idx += 1
        return tuple(sorted(sum(1 << mapping[v] for v in mem) for mem in members))

    best: list[int] | None = None
    for combo in product(*(permutations(b) for b in blocks)):
        idx = 0
        for blk in combo:
            for v in blk:
                mapping[v] = idx
                idx += 1
        enc = sorted(sum(1 << mapping[v] for v in mem) for mem in members)
        if best is None or enc < best:
            best = enc
    assert best is not None
    return tuple(best)


def canonical_key_raw(nv: int, facets: tuple[int, ...]) -> bytes:
    canon = canonical_facets(nv, facets)
    return struct.pack(f"<BH{len(canon)}I", nv, len(canon), *canon)


def canonical_key(x: Complex) -> bytes:
    """Representation-independent key: equal keys iff isomorphic complexes."""
    return canonical_key_raw(x.n_vertices, x.facets)


def is_isomorphic(a: Complex, b: Complex) -> bool:
    return canonical_key(a) == canonical_key(b)
