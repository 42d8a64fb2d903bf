import itertools

import numpy as np
import pytest

from ccx.algebra import (
    InfiniteDimensional,
    NonAdmissibleRelation,
    SingularCartan,
    Quiver,
    build_algebra,
    cartan_matrix,
    euler_matrix,
    inverse_transpose,
    is_self_injective,
    load_algebra,
    radical_series,
    semisimple_algebra,
)
from ccx.fixtures import bundled_fixture

from conftest import cyclic_b, preprojective_a2


def test_preprojective_a2():
    A = preprojective_a2()
    assert A.dim == 4
    assert cartan_matrix(A).tolist() == [[1, 1], [1, 1]]
    assert is_self_injective(A)
    assert [len(b) for b in radical_series(A)] == [2, 0]


def test_bundled_algebra_file_matches():
    A = load_algebra(bundled_fixture() / "algebra.json")
    assert A.dim == 4 and is_self_injective(A)


def test_path_algebra_a2():
    A = build_algebra(Quiver(["1", "2"], [("a", "1", "2")]), [])
    assert A.dim == 3
    assert not is_self_injective(A)


def test_semisimple():
    k3 = semisimple_algebra(3)
    assert cartan_matrix(k3).tolist() == np.eye(3, dtype=int).tolist()
    assert euler_matrix(k3).tolist() == np.eye(3, dtype=int).tolist()
    assert radical_series(k3)[0].shape[0] == 0
    assert is_self_injective(semisimple_algebra(1))


def test_bound_cyclic_quiver():
    B = cyclic_b()
    # the path gamma*alpha survives, the two relations kill the other length-2 paths
    assert B.dim == 7
    assert cartan_matrix(B).tolist() == [[1, 0, 1], [1, 1, 1], [0, 1, 1]]
    assert euler_matrix(B).tolist() == [[0, -1, 1], [1, 1, -1], [-1, 0, 1]]
    assert [len(b) for b in radical_series(B)] == [4, 1, 0]
    assert not is_self_injective(B)


def test_inverse_transpose_small():
    assert inverse_transpose([[1, 1], [0, 1]]).tolist() == [[1, 0], [-1, 1]]


def test_errors():
    loop = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(InfiniteDimensional):
        build_algebra(loop, [], max_length=6)
    with pytest.raises(NonAdmissibleRelation):
        build_algebra(loop, [[(1, ["x"])]])
    A = build_algebra(loop, [[(1, ["x", "x", "x"])]])
    assert A.dim == 3


@pytest.mark.parametrize("make", [preprojective_a2, cyclic_b])
def test_structure_constants(make):
    A = make()
    m = A.mult
    # associativity on all basis triples
    left = np.einsum("abk,kcl->abcl", m, m) % A.p
    right = np.einsum("bck,akl->abcl", m, m) % A.p
    assert np.array_equal(left, right)
    c = cartan_matrix(A)
    assert c.sum() == A.dim
    for j in range(A.nvertices):
        assert c[:, j].sum() == len([b for b in range(A.dim) if A.blocks[b][1] == j])
    if round(np.linalg.det(c)) == 0:
        with pytest.raises(SingularCartan):
            euler_matrix(A)
    else:
        e = np.array(euler_matrix(A), dtype=np.int64)
        assert np.array_equal(e @ c.T, np.eye(A.nvertices, dtype=np.int64))
