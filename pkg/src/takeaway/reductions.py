"""Binary-star detection and value-preserving position reduction.

A binary star is a non-adjacent vertex pair (x, y) whose faces swap
onto each other: every face containing x has a counterpart with y in
place of x and vice versa.  Both vertices can be removed together with
their cofaces without changing who wins; a suspension pair is the
canonical example.  The responder keeps the guarantee by mirroring any
move that touches the pair and otherwise answering in the reduced game.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import Complex, max_antichain
from .errors import NotABinaryStarError


@dataclass(frozen=True)
class BinaryStar:
    """Unordered non-adjacent vertex pair with swap-symmetric faces."""

    x: int
    y: int


@dataclass(frozen=True)
class ReductionStep:
    pair: tuple[str, str]
    facets_before: int
    facets_after: int

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "facets_before": self.facets_before,
            "facets_after": self.facets_after,
        }


def is_binary_star(x: Complex, a: int, b: int) -> bool:
    """Check the pair (a, b): no connecting edge, and equal deletion links."""
    if a == b or a >= x.n_vertices or b >= x.n_vertices:
        return False
    ba, bb = 1 << a, 1 << b
    if x.has_face(ba | bb):
        return False
    faces = x.faces()
    link_a = {m ^ ba for m in faces if m & ba}
    link_b = {m ^ bb for m in faces if m & bb}
    return link_a == link_b


def find_binary_stars(x: Complex) -> list[BinaryStar]:
    """All binary stars of the position, in vertex-index order."""
    faces = x.faces()
    nv = x.n_vertices
    out: list[BinaryStar] = []
    for a in range(nv):
        ba = 1 << a
        link_a: set[int] | None = None
        for b in range(a + 1, nv):
            bb = 1 << b
            if x.has_face(ba | bb):
                continue
            if link_a is None:
                link_a = {m ^ ba for m in faces if m & ba}
            link_b = {m ^ bb for m in faces if m & bb}
            if link_a == link_b:
                out.append(BinaryStar(a, b))
    return out


def reduce_binary_star(x: Complex, star: BinaryStar) -> Complex:
    """Remove the pair and all faces touching it; the win/loss value is kept."""
    if not is_binary_star(x, star.x, star.y):
        raise NotABinaryStarError(
            f"({star.x}, {star.y}) is not a binary star of this position"
        )
    keep = ~((1 << star.x) | (1 << star.y))
    remaining = [f & keep for f in x.facets if f & keep]
    return x._with_facets(max_antichain(remaining))


def reduce_fully(x: Complex) -> tuple[Complex, tuple[ReductionStep, ...]]:
    """Apply binary-star reduction to a fixpoint, first pair first."""
    steps: list[ReductionStep] = []
    current = x
    while True:
        stars = find_binary_stars(current)
        if not stars:
            return current, tuple(steps)
        s = stars[0]
        nxt = reduce_binary_star(current, s)
        steps.append(ReductionStep(
            (current.vertices[s.x], current.vertices[s.y]),
            len(current.facets),
            len(nxt.facets),
        ))
        current = nxt


def mirror_response(star: BinaryStar, move: int) -> int | None:
    """The same move with the star vertices swapped, or None if untouched.

    A legal move can never contain both star vertices (the pair is not
    an edge and faces are downward closed), so that case signals a
    corrupted caller state.
    """
    bx, by = 1 << star.x, 1 << star.y
    if move & bx and move & by:
        raise NotABinaryStarError("move touches both star vertices; state is corrupt")
    if move & bx:
        return (move ^ bx) | by
    if move & by:
        return (move ^ by) | bx
    return None
