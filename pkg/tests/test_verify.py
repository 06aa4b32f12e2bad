"""Verifier harness: presets, fact checks, and report plumbing."""

from __future__ import annotations

import pytest

import takeaway.verify as vf
from takeaway import PositionValue, Solver, UnknownPresetError, boundary_simplex


@pytest.fixture(scope="module")
def solver():
    return Solver()


class TestPresets:
    def test_tokens_resolve(self):
        for token in vf.preset_tokens():
            p = vf.preset(token)
            assert p.name == token
            assert p.claim

    def test_boundary_token(self):
        p = vf.preset("boundary:3")
        assert p.complex == boundary_simplex(3)
        assert p.expected is PositionValue.LOSS

    def test_sec1_facets(self):
        assert vf.preset("sec1-first").complex.facet_names() == (
            ("3", "4"), ("4", "5"), ("1", "2", "3"),
        )
        assert vf.preset("sec1-second").complex.facet_names() == (
            ("3", "5"), ("1", "2", "3"),
        )

    def test_counterexample_census(self):
        disk = vf.preset("counterexample-disk").complex
        assert disk.n_vertices == 8
        assert disk.face_count() == 8 + 18 + 11

    def test_unknown_tokens(self):
        for bad in ("nope", "boundary:7", "boundary:0", "path:4", "boundary:x"):
            with pytest.raises(UnknownPresetError):
                vf.preset(bad)


class TestStructure:
    def test_counterexample_structure_report(self):
        report = vf.verify_counterexample_structure()
        assert report.passed, report.to_text()
        names = {c.check for c in report.checks}
        assert "disk:automorphism" in names
        assert "sphere:closed" in names


class TestFactChecks:
    def test_gale_small(self, solver):
        report = vf.verify_gale(4, solver)
        assert report.passed
        assert len(report.checks) == 4

    def test_gale_range_validation(self, solver):
        with pytest.raises(ValueError):
            vf.verify_gale(9, solver)
        with pytest.raises(ValueError):
            vf.verify_gale(0, solver)

    def test_complement_small(self, solver):
        report = vf.verify_complement(4, solver)
        assert report.passed

    def test_sizes_small(self, solver):
        report = vf.verify_opening_sizes(4, solver)
        assert report.passed
        checks = {c.check for c in report.checks}
        assert f"sizes:4:edge-chain" in checks

    def test_strategy_table(self, solver):
        report = vf.verify_strategy_table(solver)
        assert report.passed
        assert len(report.checks) == 10

    def test_intro_sequence(self, solver):
        report = vf._verify_intro_sequence(solver)
        assert report.passed, report.to_text()

    def test_cheap_presets(self, solver):
        cheap = [vf.preset(t) for t in vf.preset_tokens()
                 if t.startswith(("boundary:1", "boundary:2", "boundary:3",
                                  "boundary:4", "path", "sec1"))]
        report = vf.verify_presets(solver, cheap)
        assert report.passed, report.to_text()


class TestHarnessSelfTest:
    def test_flipped_expectation_fails_exactly_one(self, solver):
        presets = [vf.preset(t) for t in ("boundary:3", "path:2", "sec1-second")]
        flipped = [
            vf.Preset(p.name, p.complex,
                      PositionValue.WIN if p.expected is PositionValue.LOSS
                      else PositionValue.LOSS,
                      p.claim)
            if p.name == "path:2" else p
            for p in presets
        ]
        report = vf.verify_presets(solver, flipped)
        assert not report.passed
        assert sum(not c.passed for c in report.checks) == 1


class TestReports:
    def test_row_shape(self, solver):
        report = vf.verify_gale(2, solver)
        row = report.checks[0].to_dict()
        assert set(row) == {"check", "cite", "expected", "observed", "pass", "millis"}

    def test_to_dict(self, solver):
        report = vf.verify_gale(2, solver)
        d = report.to_dict()
        assert d["pass"] is True
        assert len(d["checks"]) == 2

    def test_text_modes(self, solver):
        report = vf.verify_gale(2, solver)
        with_ms = report.to_text(show_millis=True)
        without = report.to_text(show_millis=False)
        assert "ms)" in with_ms
        assert "ms)" not in without
