"""Catalog of documented win/loss facts and the checks that reproduce them.

Expected values are hard-coded next to the claim they record, never
computed, so a solver regression cannot silently rewrite ground truth.
Each check reports expected vs observed plus timing and serializes to
{check, cite, expected, observed, pass, millis} rows.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .canonical import is_isomorphic
from .complexes import Complex, boundary_simplex, face_key, full_simplex, make_complex
from .errors import UnknownPresetError
from .reductions import find_binary_stars, reduce_fully
from .solver import PositionValue, Solver

WIN = PositionValue.WIN
LOSS = PositionValue.LOSS

# 8-vertex triangulation of the filled triangle with boundary 1-6-7;
# adding triangle 167 closes it into a sphere triangulation.
DISK_FACETS = [
    [1, 2, 6], [1, 3, 7], [1, 2, 8], [1, 3, 8], [2, 4, 6], [2, 4, 8],
    [4, 6, 8], [3, 5, 7], [3, 5, 8], [5, 7, 8], [6, 7, 8],
]
SPHERE_FACETS = DISK_FACETS + [[1, 6, 7]]


@dataclass(frozen=True)
class Preset:
    """A named position with its documented win/loss value."""

    name: str
    complex: Complex
    expected: PositionValue
    claim: str


def _path(k: int) -> Complex:
    return make_complex([[i, i + 1] for i in range(1, k + 1)], name=f"path:{k}")


def preset(token: str) -> Preset:
    """Look up a catalog position by token, e.g. ``boundary:4`` or ``path:2``."""
    kind, _, arg = token.partition(":")
    if kind == "boundary":
        if not arg.isdigit() or not 1 <= int(arg) <= 6:
            raise UnknownPresetError(f"boundary:n supports n = 1..6, got {token!r}")
        n = int(arg)
        return Preset(
            token,
            boundary_simplex(n),
            LOSS,
            f"the size-{n} start is a second-player win",
        )
    if kind == "path":
        if not arg.isdigit() or not 1 <= int(arg) <= 3:
            raise UnknownPresetError(f"path:k supports k = 1..3, got {token!r}")
        k = int(arg)
        return Preset(
            token,
            _path(k),
            WIN,
            f"the {k}-edge path is a first-player win via its central simplex",
        )
    if token == "sec1-first":
        return Preset(
            token,
            make_complex([[1, 2, 3], [3, 4], [4, 5]], name=token),
            WIN,
            "filled triangle with a two-edge tail: first player wins by erasing vertex 3",
        )
    if token == "sec1-second":
        return Preset(
            token,
            make_complex([[1, 2, 3], [3, 5]], name=token),
            LOSS,
            "filled triangle with one pendant edge: second player wins by table strategy",
        )
    if token == "counterexample-disk":
        return Preset(
            token,
            make_complex(DISK_FACETS, name=token),
            LOSS,
            "8-vertex triangulation of the filled triangle: second player wins",
        )
    if token == "counterexample-sphere":
        return Preset(
            token,
            make_complex(SPHERE_FACETS, name=token),
            WIN,
            "the same triangulation closed up by triangle 167: first player wins",
        )
    raise UnknownPresetError(f"unknown preset {token!r}")


def preset_tokens() -> list[str]:
    return (
        [f"boundary:{n}" for n in range(1, 7)]
        + [f"path:{k}" for k in range(1, 4)]
        + ["sec1-first", "sec1-second", "counterexample-disk", "counterexample-sphere"]
    )


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class CheckResult:
    check: str
    cite: str
    expected: str
    observed: str
    passed: bool
    millis: float

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "cite": self.cite,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
            "millis": round(self.millis, 3),
        }


@dataclass
class VerificationReport:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self, show_millis: bool = True) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.check}: expected {c.expected}, observed {c.observed}"
            if show_millis:
                line += f"  ({c.millis:.1f} ms)"
            lines.append(line)
        verdict = "all checks passed" if self.passed else "CHECKS FAILED"
        lines.append(f"{self.title}: {len(self.checks)} checks, {verdict}")
        return "\n".join(lines)


class _Recorder:
    def __init__(self, report: VerificationReport):
        self.report = report

    def add(self, check: str, cite: str, expected, observed) -> bool:
        t0 = time.perf_counter()
        exp = str(expected)
        obs = str(observed() if callable(observed) else observed)
        millis = (time.perf_counter() - t0) * 1000.0
        result = CheckResult(check, cite, exp, obs, exp == obs, millis)
        self.report.checks.append(result)
        return result.passed

    def add_bool(self, check: str, cite: str, condition: Callable[[], bool] | bool) -> bool:
        return self.add(check, cite, "true",
                        lambda: str(condition() if callable(condition) else condition).lower())


# ---------------------------------------------------------------------------
# individual verifiers

def verify_gale(max_n: int = 6, solver: Solver | None = None) -> VerificationReport:
    """Second player wins every standard start up to ``max_n`` elements."""
    if not 1 <= max_n <= 6:
        raise ValueError(f"verify gale supports max_n = 1..6, got {max_n}")
    solver = solver or Solver()
    report = VerificationReport(f"gale up to n={max_n}")
    rec = _Recorder(report)
    for n in range(1, max_n + 1):
        rec.add(
            f"gale:boundary:{n}",
            f"the size-{n} start is a second-player win",
            LOSS,
            lambda n=n: solver.value(boundary_simplex(n)),
        )
    return report


def verify_complement(max_n: int = 6, solver: Solver | None = None) -> VerificationReport:
    """The complementary reply answers every opening up to ``max_n``.

    For every opening m in the size-n start, the reply A-minus-m is
    legal and leaves a position the mover loses; an opening with an
    empty complement (cannot occur for legal openings) would instead be
    required to be a losing opening.
    """
    if not 2 <= max_n <= 6:
        raise ValueError(f"verify complement supports max_n = 2..6, got {max_n}")
    solver = solver or Solver()
    report = VerificationReport(f"complement replies up to n={max_n}")
    rec = _Recorder(report)
    for n in range(2, max_n + 1):
        start = boundary_simplex(n)
        full = (1 << n) - 1

        def run(n=n, start=start, full=full) -> str:
            bad: list[str] = []
            checked = 0
            for m in start.faces():
                comp = full ^ m
                after = start.delete_cofaces(m)
                if comp == 0:
                    if solver.value(after) is not WIN:
                        bad.append(f"{''.join(start.face_names(m))} not losing")
                    continue
                if not after.has_face(start.face_names(comp)):
                    bad.append(f"complement of {''.join(start.face_names(m))} illegal")
                    continue
                final = after.delete_cofaces(start.face_names(comp))
                if solver.value(final) is not LOSS:
                    bad.append(f"{''.join(start.face_names(m))} reply fails")
                checked += 1
            if bad:
                return "; ".join(bad)
            return f"all {checked} openings answered"

        expected = f"all {start.face_count()} openings answered"
        rec.add(
            f"complement:{n}",
            f"complementary replies win for the size-{n} start",
            expected,
            run,
        )
    return report


def verify_opening_sizes(n: int, solver: Solver | None = None) -> VerificationReport:
    """Openings of size 1, n-2 and n-1 lose, and edge removal reduces away.

    The edge chain: removing an edge from the size-n start and reducing
    the resulting binary star leaves the filled simplex on the other
    n-2 vertices, which is a win for the player to move.
    """
    if not 3 <= n <= 6:
        raise ValueError(f"verify sizes supports n = 3..6, got {n}")
    solver = solver or Solver()
    report = VerificationReport(f"opening sizes for n={n}")
    rec = _Recorder(report)
    start = boundary_simplex(n)
    for size in sorted({1, n - 2, n - 1}):
        def run(size=size) -> str:
            openings = [m for m in start.faces() if m.bit_count() == size]
            bad = [
                "".join(start.face_names(m))
                for m in openings
                if solver.value(start.delete_cofaces(m)) is not WIN
            ]
            if bad:
                return "not losing: " + " ".join(bad)
            return f"all {len(openings)} size-{size} openings lose"

        count = sum(1 for m in start.faces() if m.bit_count() == size)
        rec.add(
            f"sizes:{n}:size-{size}",
            f"size-{size} openings lose in the size-{n} start",
            f"all {count} size-{size} openings lose",
            run,
        )

    def edge_chain() -> str:
        after = start.delete_cofaces([1, 2])
        reduced, steps = reduce_fully(after)
        target = full_simplex(n - 3)  # filled simplex on the other n-2 vertices
        if not steps:
            return "no reduction happened"
        if not is_isomorphic(reduced, target):
            return f"reduced to {reduced!r}"
        if solver.value(reduced) is not WIN:
            return "reduced position is not a win"
        return f"filled simplex on {n - 2} vertices, a win"

    rec.add(
        f"sizes:{n}:edge-chain",
        "removing an edge leaves a binary star reducing to a filled simplex, so edges lose",
        f"filled simplex on {n - 2} vertices, a win",
        edge_chain,
    )
    return report


def verify_sizes(max_n: int = 6, solver: Solver | None = None,
                 min_n: int = 3) -> VerificationReport:
    if not 3 <= max_n <= 6:
        raise ValueError(f"verify sizes supports max_n = 3..6, got {max_n}")
    solver = solver or Solver()
    report = VerificationReport(f"opening sizes for n={min_n}..{max_n}")
    for n in range(min_n, max_n + 1):
        report.extend(verify_opening_sizes(n, solver))
    return report


#: reply table for the sec1-second position: opening -> winning replies
STRATEGY_TABLE: list[tuple[tuple[int, ...], tuple[int, ...]]] = [
    ((5,), (1, 2, 3)),
    ((1, 2, 3), (5,)),
    ((3,), (1,)),
    ((3,), (2,)),
    ((1,), (3,)),
    ((2,), (3,)),
    ((1, 2), (3, 5)),
    ((3, 5), (1, 2)),
    ((1, 3), (2, 3)),
    ((2, 3), (1, 3)),
]


def verify_strategy_table(solver: Solver | None = None) -> VerificationReport:
    """Every reply in the sec1-second strategy table is legal and wins."""
    solver = solver or Solver()
    report = VerificationReport("sec1-second strategy table")
    rec = _Recorder(report)
    position = preset("sec1-second").complex
    for opening, reply in STRATEGY_TABLE:
        oname = "".join(str(v) for v in opening)
        rname = "".join(str(v) for v in reply)

        def run(opening=opening, reply=reply) -> str:
            after = position.delete_cofaces([str(v) for v in opening])
            if not after.has_face([str(v) for v in reply]):
                return "reply illegal"
            final = after.delete_cofaces([str(v) for v in reply])
            if solver.value(final) is not LOSS:
                return "reply does not win"
            return "reply wins"

        rec.add(
            f"strategy:{oname}->{rname}",
            f"reply {rname} beats opening {oname} in sec1-second",
            "reply wins",
            run,
        )
    return report


def _face_census(x: Complex) -> dict[int, int]:
    census: dict[int, int] = {}
    for m in x.faces():
        d = m.bit_count() - 1
        census[d] = census.get(d, 0) + 1
    return census


def verify_counterexample_structure() -> VerificationReport:
    """Structural facts of the counterexample pair, independent of the solver."""
    report = VerificationReport("counterexample structure")
    rec = _Recorder(report)
    disk = preset("counterexample-disk").complex
    sphere = preset("counterexample-sphere").complex

    census = _face_census(disk)
    rec.add("disk:vertices", "the disk triangulation has 8 vertices", 8, census.get(0, 0))
    rec.add("disk:edges", "the disk triangulation has 18 edges", 18, census.get(1, 0))
    rec.add("disk:triangles", "the disk triangulation has 11 triangles", 11, census.get(2, 0))
    rec.add(
        "disk:euler",
        "a disk has Euler characteristic 1",
        1,
        census.get(0, 0) - census.get(1, 0) + census.get(2, 0),
    )

    triangles = [m for m in disk.faces() if m.bit_count() == 3]
    edge_use: dict[int, int] = {}
    for t in triangles:
        for e in disk.faces():
            if e.bit_count() == 2 and e & t == e:
                edge_use[e] = edge_use.get(e, 0) + 1
    boundary = sorted(
        "".join(sorted(disk.face_names(e))) for e, c in edge_use.items() if c == 1
    )
    rec.add(
        "disk:boundary-cycle",
        "the disk boundary consists of edges 16, 17 and 67",
        "16 17 67",
        " ".join(boundary),
    )
    boundary_vertices = {v for e, c in edge_use.items() if c == 1 for v in disk.face_names(e)}
    rec.add(
        "disk:interior-vertices",
        "vertices 2, 3, 4, 5 and 8 are interior",
        "2 3 4 5 8",
        " ".join(sorted(set(disk.vertices) - boundary_vertices)),
    )

    swap = {"2": "3", "3": "2", "4": "5", "5": "4", "6": "7", "7": "6"}
    mapped = make_complex(
        [[swap.get(v, v) for v in names] for names in disk.facet_names()]
    )
    rec.add_bool(
        "disk:automorphism",
        "the swap (2 3)(4 5)(6 7) maps the facet list onto itself",
        mapped == disk,
    )

    census2 = _face_census(sphere)
    rec.add("sphere:triangles", "closing the disk adds one triangle", 12, census2.get(2, 0))
    rec.add(
        "sphere:euler",
        "a sphere has Euler characteristic 2",
        2,
        census2.get(0, 0) - census2.get(1, 0) + census2.get(2, 0),
    )
    s_triangles = [m for m in sphere.faces() if m.bit_count() == 3]
    use2 = [
        sum(1 for t in s_triangles if e & t == e)
        for e in sphere.faces()
        if e.bit_count() == 2
    ]
    rec.add_bool(
        "sphere:closed",
        "every edge of the closed surface lies in exactly two triangles",
        all(c == 2 for c in use2),
    )
    return report


def verify_presets(solver: Solver | None = None,
                   presets: Iterable[Preset] | None = None) -> VerificationReport:
    """Observed solver value equals the recorded expected value for each preset."""
    solver = solver or Solver()
    if presets is None:
        presets = [preset(t) for t in preset_tokens()]
    report = VerificationReport("preset values")
    rec = _Recorder(report)
    for p in presets:
        rec.add(
            f"preset:{p.name}",
            p.claim,
            p.expected,
            lambda p=p: solver.value(p.complex),
        )
    return report


def _verify_intro_sequence(solver: Solver) -> VerificationReport:
    """The opening-figure move sequence 14 -> 234 -> 3 and its winning move."""
    report = VerificationReport("intro sequence")
    rec = _Recorder(report)
    start = boundary_simplex(4)
    after14 = start.delete_cofaces(["1", "4"])
    rec.add_bool(
        "intro:after-14",
        "after move 14 the legal moves are 123 and 234 with their subsets",
        after14 == make_complex([[1, 2, 3], [2, 3, 4]]),
    )
    after234 = after14.delete_cofaces(["2", "3", "4"])
    rec.add_bool(
        "intro:after-234",
        "removing triangle 234 leaves the filled triangle plus edges 24 and 34",
        after234 == make_complex([[1, 2, 3], [2, 4], [3, 4]]),
    )
    path = after234.delete_cofaces(["3"])
    rec.add_bool(
        "intro:after-3",
        "removing vertex 3 leaves the path 1-2-4",
        path == make_complex([[1, 2], [2, 4]]),
    )
    rec.add("intro:five-moves", "the path 1-2-4 has five legal moves", 5, path.face_count())
    rec.add_bool(
        "intro:winning-vertex-2",
        "erasing vertex 2 wins in the path 1-2-4",
        lambda: path.as_mask(["2"]) in solver.winning_moves(path),
    )
    first = preset("sec1-first").complex
    rec.add_bool(
        "sec1:winning-vertex-3",
        "erasing vertex 3 wins in the triangle-with-tail position",
        lambda: first.as_mask(["3"]) in solver.winning_moves(first),
    )
    diamond = make_complex([[1, 2, "x"], [1, 2, "y"]])
    rec.add_bool(
        "suspension:diamond",
        "the suspension of a filled edge is the diamond",
        is_isomorphic(full_simplex(1).suspension(), diamond),
    )
    return report


def verify_all(solver: Solver | None = None) -> VerificationReport:
    """Run the whole fact catalog; the CLI exposes this as ``verify paper``."""
    solver = solver or Solver()
    report = VerificationReport("full fact catalog")
    report.extend(verify_counterexample_structure())
    report.extend(verify_presets(solver))
    report.extend(_verify_intro_sequence(solver))
    report.extend(verify_strategy_table(solver))
    report.extend(verify_sizes(6, solver, min_n=4))
    gale = verify_gale(6, solver)
    report.extend(gale)
    complement = verify_complement(6, solver)
    report.extend(complement)
    # a complement pass for n forces the start to be a mover loss, so the
    # two reports must agree
    rec = _Recorder(report)
    rec.add_bool(
        "cross-check:complement-implies-gale",
        "if every opening has a winning reply the start is a second-player win",
        gale.passed or not complement.passed,
    )
    return report
