import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccx import exact_linalg as la


def matrices(p, max_side=5):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
                lambda xs: np.array(xs, dtype=np.int64).reshape(r, c)
            )
        )
    )


def test_solve_examples():
    I = la.ExactMatrix([[1, 0], [0, 1]], 5)
    assert list(la.solve_linear(I, [1, 2])) == [1, 2]
    assert la.solve_linear(la.ExactMatrix([[1, 1], [2, 2]], 5), [1, 3]) is None
    assert list(la.solve_linear(la.ExactMatrix([[2]], 5), [1])) == [3]


def test_kernel_examples():
    assert len(la.kernel_basis(la.ExactMatrix([[0, 0], [0, 0]], 3))) == 2
    assert la.kernel_basis(la.ExactMatrix(np.eye(3, dtype=int), 3)) == []
    (v,) = la.kernel_basis(la.ExactMatrix([[1, 2]], 3))
    assert list(v) == [1, 1]


def test_rejects_composite_modulus():
    with pytest.raises(ValueError):
        la.check_prime(12)


@settings(max_examples=60, deadline=None)
@given(matrices(7))
def test_rank_nullity(a):
    assert la.rank(a, 7) + la.kernel(a, 7).shape[0] == a.shape[1]


@settings(max_examples=60, deadline=None)
@given(matrices(11))
def test_kernel_vectors_are_annihilated(a):
    k = la.kernel(a, 11)
    assert not ((a @ k.T) % 11).any()


@settings(max_examples=60, deadline=None)
@given(matrices(5), st.data())
def test_solve_finds_solutions_of_consistent_systems(a, data):
    x = np.array(data.draw(st.lists(st.integers(0, 4), min_size=a.shape[1], max_size=a.shape[1])), dtype=np.int64)
    b = (a @ x) % 5
    y = la.solve(a, b, 5)
    assert y is not None and np.array_equal((a @ y) % 5, b)


@settings(max_examples=40, deadline=None)
@given(matrices(13, 4))
def test_rref_is_idempotent_and_preserves_row_space(a):
    r, piv = la.rref(a, 13)
    r2, piv2 = la.rref(r, 13)
    assert np.array_equal(r, r2) and piv == piv2
    assert la.rank(np.vstack([a, r]), 13) == la.rank(a, 13)


def test_quotient_coordinates():
    amb = np.eye(3, dtype=np.int64)
    q = la.QuotientSpace(amb, [[1, 1, 0]], 5)
    assert q.dim == 2
    assert q.coords([1, 1, 0]).tolist() == [0, 0]
