"""Solver correctness against independent oracles, plus engine behavior."""

from __future__ import annotations

import pytest

from takeaway import (
    CacheFormatError,
    CapacityError,
    PositionValue,
    Solver,
    TranspositionTable,
    boundary_simplex,
    disjoint_union,
    full_simplex,
    make_complex,
    mex,
)

from conftest import (
    all_complexes_on,
    naive_grundy,
    naive_wins,
    random_complex,
    relabeled,
)

WIN = PositionValue.WIN
LOSS = PositionValue.LOSS


def test_mex():
    assert mex([]) == 0
    assert mex([0, 1, 3]) == 2
    assert mex([1, 2]) == 0


class TestGrundyExamples:
    def test_empty(self):
        assert Solver().grundy(boundary_simplex(1)) == 0

    def test_single_vertex(self):
        # one move to the empty position: mex{0} = 1
        assert Solver().grundy(full_simplex(0)) == 1

    def test_hollow_triangle(self):
        assert Solver().grundy(boundary_simplex(3)) == 0

    def test_boundary_values_small(self):
        s = Solver()
        for n in range(1, 6):
            assert s.value(boundary_simplex(n)) is LOSS, n

    def test_full_simplices_win(self):
        s = Solver()
        for k in range(5):
            assert s.value(full_simplex(k)) is WIN, k

    def test_paths_win(self):
        s = Solver()
        for k in (1, 2, 3):
            path = make_complex([[i, i + 1] for i in range(1, k + 1)])
            assert s.value(path) is WIN, k


class TestOracles:
    def test_naive_grundy_equivalence(self, rng):
        s = Solver()
        memo: dict = {}
        for _ in range(300):
            x = random_complex(rng, 5)
            assert s.grundy(x) == naive_grundy(x, memo), x

    def test_negamax_all_small_complexes(self):
        s = Solver()
        for x in all_complexes_on(4):
            assert (s.value(x) is WIN) == naive_wins(x), x

    def test_sum_law(self, rng):
        s = Solver()
        for _ in range(200):
            a = random_complex(rng, 4)
            b = random_complex(rng, 4)
            assert s.grundy(disjoint_union(a, b)) == s.grundy(a) ^ s.grundy(b)

    def test_isomorphism_invariance(self, rng):
        s = Solver()
        for _ in range(200):
            x = random_complex(rng, 5)
            assert s.grundy(relabeled(x, rng)) == s.grundy(x)

    def test_decomposition_modes_agree(self, rng):
        plain = Solver(decompose=False)
        split = Solver(decompose=True)
        for _ in range(100):
            x = random_complex(rng, 5)
            assert plain.grundy(x) == split.grundy(x)


class TestMoves:
    def test_path_winning_move(self):
        path = make_complex([[1, 2], [2, 4]])
        s = Solver()
        moves = s.winning_moves(path)
        assert [path.face_names(m) for m in moves] == [("2",)]

    def test_sec1_first_winning_vertex(self):
        x = make_complex([[1, 2, 3], [3, 4], [4, 5]])
        s = Solver()
        assert x.as_mask(["3"]) in s.winning_moves(x)

    def test_loss_position_has_no_winning_moves(self):
        assert Solver().winning_moves(boundary_simplex(3)) == []

    def test_best_move_path(self):
        path = make_complex([[1, 2], [2, 4]])
        s = Solver()
        assert path.face_names(s.best_move(path)) == ("2",)

    def test_best_move_empty(self):
        assert Solver().best_move(boundary_simplex(1)) is None

    def test_best_move_loss_position_still_moves(self):
        s = Solver()
        move = s.best_move(boundary_simplex(2), policy="stall")
        assert move in boundary_simplex(2).faces()

    def test_best_move_strategy_table_reply(self):
        # the documented reply to opening 12 in the sec1-second position
        x = make_complex([[1, 2, 3], [3, 5]]).delete_cofaces(["1", "2"])
        s = Solver()
        assert x.face_names(s.best_move(x)) == ("3", "5")

    def test_unknown_policy(self):
        with pytest.raises(ValueError):
            Solver().best_move(boundary_simplex(2), policy="wat")


class TestSolveWithStats:
    def test_report_consistency(self, rng):
        s = Solver()
        for _ in range(100):
            x = random_complex(rng, 5)
            report = s.solve_with_stats(x, use_reduction=False)
            assert (report.value is WIN) == bool(report.winning_moves)
            assert (report.value is WIN) == (report.grundy != 0)

    def test_reduction_neutrality(self, rng):
        for _ in range(200):
            x = random_complex(rng, 5)
            with_red = Solver().solve_with_stats(x, use_reduction=True)
            without = Solver().solve_with_stats(x, use_reduction=False)
            assert with_red.value == without.value, x

    def test_reduced_moves_also_win_unreduced(self, rng):
        checked = 0
        for _ in range(300):
            x = random_complex(rng, 5)
            s = Solver()
            report = s.solve_with_stats(x, use_reduction=True)
            if not report.reduction or report.value is LOSS:
                continue
            for move in report.winning_moves:
                child = x.delete_cofaces(move)
                assert s.value(child) is LOSS
                checked += 1
        assert checked > 0

    def test_boundary5_report(self):
        report = Solver().solve_with_stats(boundary_simplex(5))
        assert report.value is LOSS
        assert report.winning_moves == ()
        assert report.table_entries > 0

    def test_single_vertex_stats(self):
        report = Solver().solve_with_stats(full_simplex(0), use_reduction=False)
        assert report.value is WIN
        assert report.grundy == 1
        # one state beyond the empty position: the vertex itself
        assert report.states_explored == 1

    def test_determinism(self):
        a = Solver().solve_with_stats(boundary_simplex(4))
        b = Solver().solve_with_stats(boundary_simplex(4))
        assert a.to_dict() | {"elapsed_ms": 0} == b.to_dict() | {"elapsed_ms": 0}

    def test_threads_agree(self):
        seq = Solver(threads=1).solve_with_stats(boundary_simplex(5))
        par = Solver(threads=4).solve_with_stats(boundary_simplex(5))
        assert seq.value == par.value
        assert seq.grundy == par.grundy
        assert seq.winning_moves == par.winning_moves
        assert seq.states_explored == par.states_explored
        assert seq.table_entries == par.table_entries

    def test_table_cap(self):
        with pytest.raises(CapacityError):
            Solver().solve_with_stats(boundary_simplex(5), table_cap=10)

    def test_to_dict_shape(self):
        d = Solver().solve_with_stats(boundary_simplex(3)).to_dict()
        assert set(d) == {
            "value", "grundy", "winning_moves", "states_explored",
            "table_entries", "elapsed_ms", "reduction",
        }


class TestTablePersistence:
    def test_round_trip(self, tmp_path):
        s = Solver()
        s.grundy(boundary_simplex(4))
        path = tmp_path / "cache.bin"
        s.table.save(path)
        fresh = TranspositionTable()
        count = fresh.load(path)
        assert count == len(s.table)
        assert fresh.data == s.table.data

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "bogus.bin"
        path.write_bytes(b"WRONG stuff")
        with pytest.raises(CacheFormatError):
            TranspositionTable().load(path)

    def test_wrong_version(self, tmp_path):
        s = Solver()
        s.grundy(boundary_simplex(3))
        path = tmp_path / "cache.bin"
        s.table.save(path)
        blob = bytearray(path.read_bytes())
        blob[4] = 99
        path.write_bytes(bytes(blob))
        with pytest.raises(CacheFormatError):
            TranspositionTable().load(path)

    def test_truncated(self, tmp_path):
        s = Solver()
        s.grundy(boundary_simplex(3))
        path = tmp_path / "cache.bin"
        s.table.save(path)
        blob = path.read_bytes()
        path.write_bytes(blob[: len(blob) - 3])
        with pytest.raises(CacheFormatError):
            TranspositionTable().load(path)

    def test_loaded_cache_produces_hits(self, tmp_path):
        s = Solver()
        s.grundy(boundary_simplex(4))
        path = tmp_path / "cache.bin"
        s.table.save(path)
        warm_table = TranspositionTable()
        warm_table.load(path)
        warm = Solver(warm_table)
        warm.grundy(boundary_simplex(4))
        assert warm_table.hits > 0
        assert warm_table.misses == 0
