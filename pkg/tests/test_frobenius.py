import numpy as np
import pytest

from ccx.frobenius import (
    CategoryError,
    FrobeniusCategory,
    StableHom,
    desuspend,
    higher_ext_check,
    lift_triangle,
    realize_triangle,
    stable_hom_dim,
    stably_isomorphic,
    suspend,
)
from ccx.modules import direct_sum, ext1, extension_middle, is_isomorphic, is_projective, split_sequence

NAMES = ["1", "2", "T2", "T3"]


def test_stable_hom_examples(mods):
    assert stable_hom_dim(mods["T2"], mods["T2"]) == 0
    assert stable_hom_dim(mods["1"], mods["1"]) == 1
    assert stable_hom_dim(mods["1"], mods["2"]) == 0


def test_suspension_examples(mods):
    assert is_isomorphic(suspend(mods["2"]), mods["1"])
    assert is_isomorphic(suspend(mods["1"]), mods["2"])
    assert suspend(mods["T2"]).dim == 0


@pytest.mark.parametrize("name", ["1", "2"])
def test_suspension_is_invertible(mods, name):
    M = mods[name]
    assert is_isomorphic(desuspend(suspend(M)), M)
    assert is_isomorphic(suspend(desuspend(M)), M)


@pytest.mark.parametrize("a", NAMES)
@pytest.mark.parametrize("b", NAMES)
def test_stable_hom_vanishes_on_projectives(mods, a, b):
    M, N = mods[a], mods[b]
    if is_projective(M) or is_projective(N):
        assert stable_hom_dim(M, N) == 0


def test_stable_hom_equals_hom_without_projective_factorizations(mods):
    sh = StableHom(mods["1"], mods["1"])
    assert sh.factoring.shape[0] == 0 and sh.dim == sh.hom.shape[0]


def test_triangle_from_extension(mods):
    ses = extension_middle(ext1(mods["1"], mods["2"]).classes()[0])
    tri = lift_triangle(ses)
    assert is_projective(tri.Y) and not tri.connecting_is_zero()
    back = realize_triangle(tri.X, tri.Z, tri.w)
    assert back.is_exact()
    assert is_isomorphic(back.middle, mods["T2"])
    assert stably_isomorphic(back.middle, ses.middle)


def test_split_triangle_has_zero_connecting_map(mods):
    tri = lift_triangle(split_sequence(mods["2"], mods["1"]))
    assert tri.connecting_is_zero()


@pytest.mark.parametrize("a", NAMES)
@pytest.mark.parametrize("b", NAMES)
@pytest.mark.parametrize("i", [1, 2, 3])
def test_higher_ext(mods, a, b, i):
    assert higher_ext_check(mods[a], mods[b], i)


def test_category_validation(A, mods):
    cat = FrobeniusCategory(A, [mods[n] for n in NAMES], tuple(NAMES))
    assert cat.two_cy_violations() == []
    assert cat.nonprojective_indices() == [0, 1]
    assert cat.multiplicities(direct_sum(mods["2"], mods["T3"], mods["2"])) == [0, 2, 0, 1]
    with pytest.raises(CategoryError) as err:
        FrobeniusCategory(A, [mods["T2"], mods["T2"]], ("x", "y"))
    assert err.value.pair == ("x", "y")
    with pytest.raises(CategoryError):
        FrobeniusCategory(A, [direct_sum(mods["1"], mods["2"])], ("s",))


def test_non_self_injective_rejected():
    from ccx.algebra import Quiver, build_algebra
    from ccx.modules import simple

    A = build_algebra(Quiver(["1", "2"], [("a", "1", "2")]), [])
    with pytest.raises(CategoryError, match="self-injective"):
        FrobeniusCategory(A, [simple(A, 0)])
