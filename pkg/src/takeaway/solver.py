"""Exact game solving via memoized Sprague-Grundy search.

Positions are split into connected components whose Grundy values are
XOR-combined; per component the value is the mex over all moves, with
results memoized under the canonical key so isomorphic positions are
solved once.  Stored values are exact and final, which makes the
transposition table safe to share across threads: racing duplicate
computation is benign.
"""

from __future__ import annotations

import os
import struct
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from . import reductions
from .canonical import _H_SIZE, canonical_key_raw
from .complexes import Complex, delete_raw, enum_faces, face_key, reindex_raw, split_raw
from .errors import CacheFormatError, CapacityError
from .reductions import ReductionStep


def _reindex_invariant(facets: Sequence[int]) -> tuple[int, ...]:
    """Compress onto 0..k-1 with bit positions ordered by a vertex profile.

    Ordering vertices by an isomorphism-invariant profile (hashed incident
    facet sizes) makes many relabelings of the same position coincide
    already in labeled form, so they share one canonicalization.  Any
    deterministic ordering is correct; the profile only improves reuse.
    """
    used = 0
    for f in facets:
        used |= f
    nv = used.bit_count()
    prof: dict[int, int] = {}
    for f in facets:
        h = _H_SIZE[f.bit_count()]
        m = f
        while m:
            low = m & -m
            prof[low] = prof.get(low, 0) + h
            m ^= low
    order = sorted(prof, key=lambda low: (prof[low], low))
    table = {low: 1 << i for i, low in enumerate(order)}
    out: list[int] = []
    for f in facets:
        nf = 0
        while f:
            low = f & -f
            nf |= table[low]
            f ^= low
        out.append(nf)
    out.sort()
    return tuple(out)


class PositionValue(Enum):
    """WIN: the player to move wins; LOSS: the player to move loses."""

    WIN = "WIN"
    LOSS = "LOSS"

    def __str__(self) -> str:
        return self.value


def mex(values: Iterable[int]) -> int:
    present = set(values)
    g = 0
    while g in present:
        g += 1
    return g


class TranspositionTable:
    """Canonical-key -> Grundy store; entries never change once inserted."""

    MAGIC = b"TKWG"
    VERSION = 1

    def __init__(self, cap: int | None = None):
        self.data: dict[bytes, int] = {}
        self.cap = cap
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self.data)

    def get(self, key: bytes) -> int | None:
        g = self.data.get(key)
        if g is None:
            self.misses += 1
        else:
            self.hits += 1
        return g

    def insert(self, key: bytes, grundy: int) -> None:
        if self.cap is not None and len(self.data) >= self.cap and key not in self.data:
            raise CapacityError(
                f"transposition table cap of {self.cap} entries exceeded"
            )
        self.data[key] = grundy

    def clear(self) -> None:
        self.data.clear()
        self.hits = 0
        self.misses = 0

    # -- persistence ---------------------------------------------------------

    def save(self, path: str | os.PathLike) -> None:
        chunks = [self.MAGIC, struct.pack("<IQ", self.VERSION, len(self.data))]
        for key, g in sorted(self.data.items()):
            chunks.append(struct.pack("<H", len(key)))
            chunks.append(key)
            chunks.append(struct.pack("<I", g))
        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(b"".join(chunks))
        os.replace(tmp, path)

    def load(self, path: str | os.PathLike) -> int:
        """Merge records from a cache file; returns the record count."""
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:4] != self.MAGIC:
            raise CacheFormatError(f"{path}: not a solver cache file")
        if len(blob) < 16:
            raise CacheFormatError(f"{path}: truncated header")
        version, count = struct.unpack_from("<IQ", blob, 4)
        if version != self.VERSION:
            raise CacheFormatError(
                f"{path}: cache version {version} does not match {self.VERSION}"
            )
        pos = 16
        for _ in range(count):
            if pos + 2 > len(blob):
                raise CacheFormatError(f"{path}: truncated record")
            (klen,) = struct.unpack_from("<H", blob, pos)
            pos += 2
            if pos + klen + 4 > len(blob):
                raise CacheFormatError(f"{path}: truncated record")
            key = blob[pos:pos + klen]
            pos += klen
            (g,) = struct.unpack_from("<I", blob, pos)
            pos += 4
            self.data[key] = g
        return count


@dataclass(frozen=True)
class SolveReport:
    """Result of one solve.

    When ``reduction`` is non-empty the grundy value and winning moves
    describe the reduced position; the win/loss value holds for the
    original as well, and every listed move is also winning there.
    """

    value: PositionValue
    grundy: int
    winning_moves: tuple[tuple[str, ...], ...]
    states_explored: int
    table_entries: int
    elapsed_ms: float
    reduction: tuple[ReductionStep, ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": self.value.value,
            "grundy": self.grundy,
            "winning_moves": [list(m) for m in self.winning_moves],
            "states_explored": self.states_explored,
            "table_entries": self.table_entries,
            "elapsed_ms": self.elapsed_ms,
            "reduction": [s.to_dict() for s in self.reduction],
        }


class Solver:
    """Shared solving context around one transposition table.

    Safe to use from several threads; results are independent of
    scheduling because stored values are exact.
    """

    #: soft bound on the per-solver caches that bypass splitting and
    #: canonicalization for positions seen in this exact labeling before
    LABELED_CACHE_LIMIT = 4_000_000

    def __init__(self, table: TranspositionTable | None = None, *,
                 decompose: bool = True, threads: int = 1):
        self.table = table if table is not None else TranspositionTable()
        self.decompose = decompose
        self.threads = max(1, threads)
        self._labeled: dict[tuple[int, ...], int] = {}
        self._semi: dict[tuple[int, ...], int] = {}
        self._parts: dict[tuple[int, ...], int] = {}

    # -- internal recursion on reindexed facet tuples -------------------------

    def _grundy_parts(self, facets: Sequence[int]) -> int:
        if not facets:
            return 0
        key = tuple(facets)
        cache = self._parts
        g = cache.get(key)
        if g is not None:
            return g
        if self.decompose and len(facets) > 1:
            groups = split_raw(facets)
            if len(groups) > 1:
                g = 0
                for _, members in groups:
                    _, comp = reindex_raw(members)
                    g ^= self._grundy_conn(comp)
                if len(cache) < self.LABELED_CACHE_LIMIT:
                    cache[key] = g
                return g
        _, whole = reindex_raw(facets)
        g = self._grundy_conn(whole)
        if len(cache) < self.LABELED_CACHE_LIMIT:
            cache[key] = g
        return g

    def _grundy_conn(self, facets: tuple[int, ...]) -> int:
        labeled = self._labeled
        g = labeled.get(facets)
        if g is not None:
            return g
        # second-level key: the same position under an invariant vertex
        # ordering; collapses many relabelings before canonicalizing
        semi = _reindex_invariant(facets)
        semi_cache = self._semi
        g = semi_cache.get(semi)
        if g is None:
            used = 0
            for f in facets:
                used |= f
            key = canonical_key_raw(used.bit_count(), facets)
            g = self.table.get(key)
            if g is None:
                seen: set[int] = set()
                add = seen.add
                parts = self._grundy_parts
                # move order is irrelevant here: mex needs every child value
                for sigma in enum_faces(facets):
                    add(parts(delete_raw(facets, sigma)))
                g = 0
                while g in seen:
                    g += 1
                self.table.insert(key, g)
            if len(semi_cache) < self.LABELED_CACHE_LIMIT:
                semi_cache[semi] = g
        if len(labeled) < self.LABELED_CACHE_LIMIT:
            labeled[facets] = g
        return g

    # -- public operations -----------------------------------------------------

    def grundy(self, x: Complex) -> int:
        return self._grundy_parts(x.facets)

    def value(self, x: Complex) -> PositionValue:
        return PositionValue.WIN if self.grundy(x) else PositionValue.LOSS

    def _child_values(self, x: Complex, moves: Sequence[int]) -> list[int]:
        facets = x.facets
        if self.threads > 1 and len(moves) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                return list(pool.map(
                    lambda sigma: self._grundy_parts(delete_raw(facets, sigma)),
                    moves,
                ))
        return [self._grundy_parts(delete_raw(facets, sigma)) for sigma in moves]

    def winning_moves(self, x: Complex) -> list[int]:
        """Faces whose removal leaves a Grundy-0 position, in face order."""
        moves = x.faces()
        vals = self._child_values(x, moves)
        return [m for m, g in zip(moves, vals) if g == 0]

    @staticmethod
    def engine_order(moves: Iterable[int]) -> list[int]:
        # search order: big faces first, later vertices break ties
        return sorted(moves, key=face_key, reverse=True)

    def best_move(self, x: Complex, policy: str = "first-winning") -> int | None:
        """An engine move: the first winning move in engine order, else a fallback.

        In lost positions ``stall`` picks the move leaving the opponent
        the fewest winning replies; ``first-winning`` just plays the
        first legal move.
        """
        moves = self.engine_order(x.faces())
        if not moves:
            return None
        for m in moves:
            if self._grundy_parts(delete_raw(x.facets, m)) == 0:
                return m
        if policy == "first-winning":
            return moves[0]
        if policy == "stall":
            best = None
            best_count: int | None = None
            for m in moves:
                count = len(self.winning_moves(x.delete_cofaces(m)))
                if best_count is None or count < best_count:
                    best, best_count = m, count
            return best
        raise ValueError(f"unknown engine policy {policy!r}")

    def solve_with_stats(self, x: Complex, *, use_reduction: bool = True,
                         decompose: bool | None = None,
                         table_cap: int | None = None) -> SolveReport:
        """Solve and report value, grundy, winning moves and search statistics."""
        t0 = time.perf_counter()
        table = TranspositionTable(cap=table_cap) if table_cap is not None else self.table
        eng = self if (table is self.table and decompose is None) else Solver(
            table,
            decompose=self.decompose if decompose is None else decompose,
            threads=self.threads,
        )
        target = x
        steps: tuple[ReductionStep, ...] = ()
        if use_reduction:
            target, steps = reductions.reduce_fully(x)
        before = len(table)
        moves = target.faces()
        vals = eng._child_values(target, moves)
        # tabling the root costs nothing extra (children are cached) and
        # makes the state count include the solved position itself
        g = eng._grundy_parts(target.facets)
        winning = tuple(
            target.face_names(m) for m, v in zip(moves, vals) if v == 0
        )
        elapsed = (time.perf_counter() - t0) * 1000.0
        return SolveReport(
            value=PositionValue.WIN if g else PositionValue.LOSS,
            grundy=g,
            winning_moves=winning,
            states_explored=len(table) - before,
            table_entries=len(table),
            elapsed_ms=elapsed,
            reduction=steps,
        )


# ---------------------------------------------------------------------------
# module-level convenience around one shared default solver

_default = Solver()


def default_solver() -> Solver:
    return _default


def grundy(x: Complex) -> int:
    return _default.grundy(x)


def value(x: Complex) -> PositionValue:
    return _default.value(x)


def winning_moves(x: Complex) -> list[int]:
    return _default.winning_moves(x)


def best_move(x: Complex, policy: str = "first-winning") -> int | None:
    return _default.best_move(x, policy)


def solve_with_stats(x: Complex, **kwargs) -> SolveReport:
    return _default.solve_with_stats(x, **kwargs)
