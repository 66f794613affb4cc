from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from scarfres import linalg

small = st.integers(-5, 5)
matrix = st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5)


def test_hnf_reduce_membership():
    H, piv = linalg.hermite_normal_form([(-1, 2, -1), (3, -1, -1)])
    assert linalg.hnf_reduce((2, 1, -2), H, piv) == (0, 0, 0)
    assert linalg.hnf_reduce((3, 1, -1), H, piv) != (0, 0, 0)


def test_nullspace_of_grading():
    ns = linalg.nullspace([(-1, 2, -1), (3, -1, -1)], 3)
    assert len(ns) == 1
    assert linalg.primitive(ns[0]) in {(3, 4, 5), (-3, -4, -5)}


def test_solve_rational():
    sol = linalg.solve_rational([[2, 0], [0, 3]], [1, 1])
    assert sol == [Fraction(1, 2), Fraction(1, 3)]
    assert linalg.solve_rational([[1, 1], [1, 1]], [0, 1]) is None


@given(matrix)
def test_ranks_agree(rows):
    exact = linalg.rational_rank(rows)
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    assert linalg.sparse_rank(sparse) == exact
    # a large prime sees the same rank for entries this small
    assert linalg.sparse_rank(sparse, prime=linalg.DEFAULT_PRIME) == exact
    assert linalg.dense_rank_mod_p(rows) == exact


@given(matrix)
def test_kernel_is_kernel(rows):
    cols = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(4)]
    for vec in linalg.sparse_kernel(cols, len(rows)):
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, vec)) == 0
