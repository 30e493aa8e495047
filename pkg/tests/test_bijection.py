import itertools

import pytest
from hypothesis import given, strategies as st

from dualgroth.bijection import descent_level_set, phi, phi_inverse, shape_via_max_paths
from dualgroth.partitions import column_content, enumerate_pp_bounded, pad, plane_shape

from oracles import max_path_weight

PAPER_PP = ((4, 4, 2), (4, 2, 1), (2, 2))
PAPER_D = ((0, 1, 0, 1), (1, 0, 0, 1), (0, 2, 0, 0))


def test_descent_level_sets_paper_example():
    assert descent_level_set(PAPER_PP, 3, 2) == {1, 2}
    assert descent_level_set(PAPER_PP, 1, 4) == {2}
    assert descent_level_set(PAPER_PP, 1, 9) == set()


def test_phi_paper_example():
    assert phi(PAPER_PP, 3, 4) == PAPER_D
    assert phi_inverse(PAPER_D) == PAPER_PP


def test_phi_trivial_cases():
    assert phi((), 2, 3) == ((0, 0, 0), (0, 0, 0))
    assert phi(((3,),), 1, 4) == ((0, 0, 1, 0),)
    assert phi_inverse(((0, 0), (0, 0))) == ()


def test_phi_rejects_out_of_range():
    with pytest.raises(ValueError):
        phi(PAPER_PP, 2, 4)
    with pytest.raises(ValueError):
        phi(PAPER_PP, 3, 3)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5))
def test_single_row_inverse(row):
    pp = phi_inverse((tuple(row),))
    expected = tuple(l for l in range(len(row), 0, -1) for _ in range(row[l - 1]))
    assert pp == ((expected,) if expected else ())
    assert phi(pp, 1, len(row)) == tuple([tuple(row)])


def test_roundtrip_on_plane_partitions():
    for m, n, w in [(3, 3, 3), (2, 4, 3), (4, 2, 2)]:
        for pp in enumerate_pp_bounded(m, n, w):
            d = phi(pp, m, n)
            assert phi_inverse(d) == pp
            assert shape_via_max_paths(d) == pad(plane_shape(pp), m)
            for l in range(1, n + 1):
                assert sum(row[l - 1] for row in d) == column_content(pp, l)


def test_roundtrip_on_matrices():
    for flat in itertools.product(range(3), repeat=9):
        d = (flat[:3], flat[3:6], flat[6:])
        assert phi(phi_inverse(d), 3, 3) == d


def test_trailing_zero_columns():
    padded = tuple(r + (0, 0, 0) for r in PAPER_D)
    assert phi_inverse(padded) == PAPER_PP


def test_shape_via_max_paths_bruteforce():
    assert shape_via_max_paths(PAPER_D) == (3, 3, 2)
    assert shape_via_max_paths(((0, 0), (0, 0))) == (0, 0)
    assert shape_via_max_paths(((5,),)) == (5,)
    for flat in itertools.product(range(2), repeat=6):
        d = (flat[:3], flat[3:])
        expected = tuple(max_path_weight(d, (k, 0), (1, 2)) for k in range(2))
        assert shape_via_max_paths(d) == expected


@given(st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_max_path_shape_is_partition(rows):
    lam = shape_via_max_paths(rows)
    assert all(a >= b for a, b in zip(lam, lam[1:]))
