"""Simplicial complexes as game positions.

A position in the subset take-away game is an abstract simplicial
complex: a downward-closed family of non-empty vertex sets.  Only the
maximal faces (facets) are stored; the rest are enumerated on demand.
Faces are bit masks over a complex's vertex list (bit ``i`` stands for
``vertices[i]``), which keeps subset tests O(1) and positions cheap to
hash and compare.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, NotAFaceError, ParseError

#: Hard cap on vertices per complex; faces fit in one 32-bit mask.
CAPACITY = 32

_NAME_CHARS = frozenset(string.printable) - frozenset(string.whitespace)

FaceLike = "int | Iterable[str | int]"


# ---------------------------------------------------------------------------
# low-level mask helpers (shared by the canonical labeler and the solver)

def face_key(mask: int) -> tuple[int, int]:
    """Deterministic face order: by size, then by mask value."""
    return (mask.bit_count(), mask)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All non-empty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def enum_faces(facets: Iterable[int]) -> set[int]:
    """Every non-empty subset of every facet, deduplicated."""
    seen: set[int] = set()
    add = seen.add
    for f in facets:
        sub = f
        while sub:
            add(sub)
            sub = (sub - 1) & f
    return seen


def max_antichain(masks: Iterable[int]) -> tuple[int, ...]:
    """Maximal elements under bitwise inclusion, sorted by mask value."""
    ordered = sorted(set(masks), key=int.bit_count, reverse=True)
    keep: list[int] = []
    for m in ordered:
        for k in keep:
            if m & k == m:
                break
        else:
            keep.append(m)
    keep.sort()
    return tuple(keep)


def delete_raw(facets: Sequence[int], sigma: int) -> tuple[int, ...]:
    """Facets of the position after the move ``sigma`` (no reindexing).

    Facets not containing sigma survive; a facet containing sigma is
    replaced by its maximal subsets that avoid sigma, i.e. the facet
    minus one vertex of sigma at a time.  Output is value-sorted.
    """
    out = [f for f in facets if f & sigma != sigma]
    if len(out) == len(facets):
        return tuple(out)
    hits = [f for f in facets if f & sigma == sigma]
    cands: list[int] = []
    hit_size = hits[0].bit_count()
    same_size = True
    for f in hits:
        if f.bit_count() != hit_size:
            same_size = False
        rest = sigma
        while rest:
            low = rest & -rest
            rest ^= low
            c = f ^ low
            if c:
                cands.append(c)
    if not cands:
        return tuple(out)  # untouched facets are already an antichain
    uniq = set(cands)
    if same_size:
        # equal-sized candidates cannot nest in each other
        for c in uniq:
            for s in out:
                if c & s == c:
                    break
            else:
                out.append(c)
    else:
        for c in uniq:
            for s in out:
                if c & s == c:
                    break
            else:
                for c2 in uniq:
                    if c2 != c and c & c2 == c:
                        break
                else:
                    out.append(c)
    out.sort()
    return tuple(out)


def split_raw(facets: Sequence[int]) -> list[tuple[int, list[int]]]:
    """Group facets into connected components.

    Returns ``(vertex_mask, facets)`` pairs ordered by smallest vertex
    index.  Downward closure makes facet-overlap connectivity equal
    1-skeleton connectivity.
    """
    comps: list[int] = []
    for f in facets:
        acc = f
        rest: list[int] = []
        for m in comps:
            if m & acc:
                acc |= m
            else:
                rest.append(m)
        rest.append(acc)
        comps = rest
    if len(comps) == 1:
        return [(comps[0], list(facets))]
    comps.sort(key=lambda m: m & -m)
    return [(m, [f for f in facets if f & m]) for m in comps]


def reindex_raw(facets: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Compress facet masks onto vertex indices 0..k-1, value-sorted."""
    used = 0
    for f in facets:
        used |= f
    nv = used.bit_count()
    if used == (1 << nv) - 1:
        return nv, tuple(sorted(facets))
    table: dict[int, int] = {}
    new_bit = 1
    m = used
    while m:
        low = m & -m
        table[low] = new_bit
        new_bit <<= 1
        m ^= low
    out: list[int] = []
    for f in facets:
        nf = 0
        while f:
            low = f & -f
            nf |= table[low]
            f ^= low
        out.append(nf)
    out.sort()
    return nv, tuple(out)


# ---------------------------------------------------------------------------
# the position type

def _check_name(name: str) -> str:
    if not (1 <= len(name) <= 16) or not set(name) <= _NAME_CHARS:
        raise ValueError(
            f"bad vertex name {name!r}: need 1-16 printable characters, no whitespace"
        )
    return name


@dataclass(frozen=True, eq=False)
class Complex:
    """An immutable game position stored by its facets.

    ``facets`` is an antichain of bit masks over ``vertices`` sorted by
    (size, mask); every vertex occurs in at least one facet, so an
    isolated vertex is a singleton facet and a vertex in no face at all
    does not exist.  Equality compares the named face family, not the
    internal vertex order.
    """

    vertices: tuple[str, ...]
    facets: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    # -- basic structure ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def is_empty(self) -> bool:
        return not self.facets

    def dim(self) -> int:
        """Largest face dimension; -1 for the empty complex."""
        return max((f.bit_count() for f in self.facets), default=0) - 1

    @cached_property
    def _face_set(self) -> frozenset[int]:
        return frozenset(enum_faces(self.facets))

    @cached_property
    def _faces_sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self._face_set, key=face_key))

    def faces(self) -> tuple[int, ...]:
        """All faces (legal moves), in deterministic face order."""
        return self._faces_sorted

    def face_count(self) -> int:
        return len(self._face_set)

    # -- face conversion ---------------------------------------------------

    @cached_property
    def _index(self) -> dict[str, int]:
        return {nm: i for i, nm in enumerate(self.vertices)}

    def as_mask(self, face: "FaceLike") -> int:
        """Coerce a mask or an iterable of vertex names to a mask."""
        if isinstance(face, int):
            if face < 0 or face >> len(self.vertices):
                raise NotAFaceError(f"mask {face:#x} is outside the vertex range")
            return face
        mask = 0
        for nm in face:
            nm = str(nm)
            i = self._index.get(nm)
            if i is None:
                raise NotAFaceError(f"no vertex named {nm!r} in this position")
            mask |= 1 << i
        return mask

    def face_names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in iter_bits(mask))

    def facet_names(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.face_names(f) for f in self.facets)

    def has_face(self, face: "FaceLike") -> bool:
        try:
            mask = self.as_mask(face)
        except NotAFaceError:
            return False
        if not mask:
            return False
        for f in self.facets:
            if mask & f == mask:
                return True
        return False

    # -- game and structural operations -------------------------------------

    def _with_facets(self, raw_facets: Sequence[int]) -> "Complex":
        # Rebuild after an operation that may orphan vertices: drop them
        # and compress the masks, keeping surviving names in order.
        used = 0
        for f in raw_facets:
            used |= f
        names = tuple(self.vertices[i] for i in iter_bits(used))
        _, facets = reindex_raw(raw_facets)
        return Complex(names, tuple(sorted(facets, key=face_key)))

    def delete_cofaces(self, face: "FaceLike") -> "Complex":
        """The position after moving ``face``: it and every face containing it go."""
        sigma = self.as_mask(face)
        if not self.has_face(sigma):
            raise NotAFaceError(
                f"{'/'.join(self.face_names(sigma)) or sigma} is not a face of this position"
            )
        return self._with_facets(delete_raw(self.facets, sigma))

    def suspension(self) -> "Complex":
        """Join with two fresh non-adjacent vertices.

        The result contains this complex, every face extended by either
        fresh vertex, and the two fresh singletons.
        """
        if len(self.vertices) + 2 > CAPACITY:
            raise CapacityError(f"suspension would exceed {CAPACITY} vertices")
        taken = set(self.vertices)
        k = 0
        while True:
            a, b = ("x", "y") if k == 0 else (f"x{k}", f"y{k}")
            if a not in taken and b not in taken:
                break
            k += 1
        names = self.vertices + (a, b)
        ba = 1 << len(self.vertices)
        bb = ba << 1
        if not self.facets:
            facets: tuple[int, ...] = (ba, bb)
        else:
            facets = tuple(sorted(
                [f | ba for f in self.facets] + [f | bb for f in self.facets],
                key=face_key,
            ))
        return Complex(names, facets)

    def components(self) -> list["Complex"]:
        """Connected components, ordered by smallest vertex index."""
        return [self._with_facets(members) for _, members in split_raw(self.facets)]

    # -- serialization -------------------------------------------------------

    def _serial_rows(self) -> list[list[str]]:
        # ordering depends only on the named face family, so serialized
        # text is identical for any internal vertex indexing
        rows = [sorted(names) for names in self.facet_names()]
        rows.sort(key=lambda r: (len(r), r))
        return rows

    def to_text(self) -> str:
        """One facet per line, vertex names whitespace-separated."""
        return "\n".join(" ".join(row) for row in self._serial_rows())

    def to_json(self, indent: int | None = None) -> str:
        obj: dict = {}
        if self.name is not None:
            obj["name"] = self.name
        obj["facets"] = self._serial_rows()
        return json.dumps(obj, indent=indent)

    # -- identity ------------------------------------------------------------

    @cached_property
    def _named_facets(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(names) for names in self.facet_names())

    def __eq__(self, other: object):
        if not isinstance(other, Complex):
            return NotImplemented
        return self._named_facets == other._named_facets

    def __hash__(self) -> int:
        return hash(self._named_facets)

    def __repr__(self) -> str:
        inner = ", ".join(" ".join(names) for names in self.facet_names())
        return f"Complex[{inner}]"


# ---------------------------------------------------------------------------
# constructors

def make_complex(facet_list: Iterable[Iterable[str | int]],
                 name: str | None = None) -> Complex:
    """Build the downward closure of the given vertex-name sets.

    Vertex indices follow first appearance; sets passed as unordered
    collections are read in sorted order.  Non-maximal input sets are
    dropped.
    """
    vertices: list[str] = []
    index: dict[str, int] = {}
    masks: list[int] = []
    for entry in facet_list:
        if isinstance(entry, (str, int)):
            entry = [entry]
        items = list(entry)
        if not isinstance(entry, (list, tuple)):
            items = sorted(items, key=str)
        if not items:
            raise ValueError("facet lists may not contain an empty set")
        mask = 0
        for raw in items:
            nm = _check_name(str(raw))
            i = index.get(nm)
            if i is None:
                i = len(vertices)
                if i >= CAPACITY:
                    raise CapacityError(f"complex would exceed {CAPACITY} vertices")
                index[nm] = i
                vertices.append(nm)
            mask |= 1 << i
        masks.append(mask)
    facets = tuple(sorted(max_antichain(masks), key=face_key))
    # antichain pruning cannot orphan a vertex: pruned sets are subsets
    # of kept ones, so every name still occurs in some facet
    return Complex(tuple(vertices), facets, name=name)


def boundary_simplex(n: int) -> Complex:
    """The standard start for a ground set of ``n`` elements.

    All proper non-empty subsets of {1..n}; n = 1 yields the empty
    complex (no legal moves).
    """
    if not 1 <= n <= CAPACITY:
        raise CapacityError(f"need 1 <= n <= {CAPACITY}, got {n}")
    if n == 1:
        return Complex((), ())
    full = (1 << n) - 1
    facets = tuple(sorted((full ^ (1 << i) for i in range(n)), key=face_key))
    return Complex(tuple(str(i + 1) for i in range(n)), facets)


def full_simplex(k: int) -> Complex:
    """The filled k-dimensional simplex: one facet on k+1 vertices."""
    if k < 0 or k + 1 > CAPACITY:
        raise CapacityError(f"need 0 <= k <= {CAPACITY - 1}, got {k}")
    return Complex(tuple(str(i + 1) for i in range(k + 1)), ((1 << (k + 1)) - 1,))


def disjoint_union(x: Complex, y: Complex) -> Complex:
    """Place two positions side by side on disjoint vertex sets.

    Colliding names from ``y`` get a ``~2``, ``~3``, ... suffix.
    """
    if x.n_vertices + y.n_vertices > CAPACITY:
        raise CapacityError(f"union would exceed {CAPACITY} vertices")
    taken = set(x.vertices)
    renamed: list[str] = []
    for nm in y.vertices:
        cand = nm
        k = 2
        while cand in taken:
            suffix = f"~{k}"
            cand = nm[: 16 - len(suffix)] + suffix
            k += 1
        taken.add(cand)
        renamed.append(cand)
    shift = x.n_vertices
    facets = x.facets + tuple(f << shift for f in y.facets)
    return Complex(x.vertices + tuple(renamed), tuple(sorted(facets, key=face_key)))


# ---------------------------------------------------------------------------
# text and structured formats

_TOKEN_RE = re.compile(r"\S+")


def from_text(text: str, name: str | None = None) -> Complex:
    """Parse the facet text format: one facet per line, ``#`` comment lines."""
    facet_lists: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row: list[str] = []
        for m in _TOKEN_RE.finditer(raw):
            token = m.group()
            try:
                _check_name(token)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, m.start() + 1) from None
            row.append(token)
        facet_lists.append(row)
    try:
        return make_complex(facet_lists, name=name)
    except ValueError as exc:  # pragma: no cover - tokenizer rejects these first
        raise ParseError(str(exc)) from None


def from_json(text: str) -> Complex:
    """Parse the structured format: {"name"?: str, "facets": [[name, ...], ...]}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "facets" not in obj:
        raise ParseError('expected an object with a "facets" array')
    facets = obj["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ParseError('"facets" must be an array of arrays of vertex names')
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError('"name" must be a string when present')
    cleaned: list[list[str]] = []
    for f in facets:
        row: list[str] = []
        for item in f:
            if isinstance(item, bool) or not isinstance(item, (str, int)):
                raise ParseError(f"bad vertex name {item!r}")
            row.append(str(item))
        cleaned.append(row)
    try:
        return make_complex(cleaned, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
