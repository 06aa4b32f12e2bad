"""Canonical keys: relabeling soundness and small-scale completeness."""

from __future__ import annotations

from takeaway import boundary_simplex, canonical_key, is_isomorphic, make_complex

from conftest import DISK_FACETS, brute_isomorphic, random_complex, relabeled


def test_relabeling_soundness(rng):
    for _ in range(1000):
        x = random_complex(rng, 6)
        assert canonical_key(relabeled(x, rng)) == canonical_key(x)


def test_completeness_against_brute_force(rng):
    pool = [random_complex(rng, 5) for _ in range(60)]
    for i, a in enumerate(pool):
        for b in pool[i + 1:]:
            keys_equal = canonical_key(a) == canonical_key(b)
            assert keys_equal == brute_isomorphic(a, b)


def test_name_independence():
    a = boundary_simplex(3)
    b = make_complex([["a", "b"], ["b", "c"], ["a", "c"]])
    assert canonical_key(a) == canonical_key(b)


def test_different_triangulations_differ():
    first = make_complex([[1, 2, 3], [3, 4], [4, 5]])
    second = make_complex([[1, 2, 3], [3, 5]])
    assert canonical_key(first) != canonical_key(second)


def test_disk_swap_automorphism():
    disk = make_complex(DISK_FACETS)
    swap = {"2": "3", "3": "2", "4": "5", "5": "4", "6": "7", "7": "6"}
    mapped = make_complex(
        [[swap.get(v, v) for v in names] for names in disk.facet_names()]
    )
    assert canonical_key(mapped) == canonical_key(disk)


def test_point_vs_edge():
    assert not is_isomorphic(make_complex([[1]]), make_complex([[1, 2]]))


def test_four_cycle_is_suspension_of_two_points():
    four_cycle = make_complex([[1, 2], [2, 3], [3, 4], [4, 1]])
    assert is_isomorphic(four_cycle, boundary_simplex(2).suspension())


def test_empty_and_tiny_keys():
    assert canonical_key(boundary_simplex(1)) == canonical_key(make_complex([]))
    assert canonical_key(make_complex([[7]])) == canonical_key(make_complex([["x"]]))


def test_key_distinguishes_sizes(rng):
    seen = {}
    for _ in range(200):
        x = random_complex(rng, 5)
        key = canonical_key(x)
        census = (x.n_vertices, x.face_count())
        if key in seen:
            assert seen[key] == census
        else:
            seen[key] = census
