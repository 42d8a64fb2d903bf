import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccx.algebra import cartan_matrix, euler_matrix, radical_series
from ccx.frobenius import suspend
from ccx.laurent import K0Vector
from ccx.modules import (
    ShortExactSequence,
    direct_sum,
    euler_form_3,
    ext1,
    extension_middle,
    is_isomorphic,
    projective,
    simple,
    split_sequence,
)
from ccx.tilting import TiltingData, TiltingError, solve_phi, PhiInconsistent, PhiDeficient, verify_cluster_tilting
from ccx.verify import _random_base_change

from conftest import cyclic_b

CATALOG = ["T1", "T2", "T3", "2"]


def coords(v):
    return list(v.coords)


def arrow_counts(A):
    """dim e_i (rad / rad^2) e_j for a basic algebra."""
    rad = radical_series(A)
    counts = np.zeros((A.nvertices, A.nvertices), dtype=int)
    top = [b for b in A.radical_indices]
    layer = rad[0].shape[0] - rad[1].shape[0]
    for b in top:
        counts[A.blocks[b]] += 1
    for row in rad[1]:
        b = int(np.flatnonzero(row)[0])
        counts[A.blocks[b]] -= 1
    assert counts.sum() == layer
    return counts


def test_summand_order_and_rank(td):
    assert td.names == ("T1", "T2", "T3")
    assert (td.n, td.r) == (3, 1)


def test_endomorphism_algebra(td):
    B = td.B
    assert cartan_matrix(B).tolist() == [[1, 0, 1], [1, 1, 1], [0, 1, 1]]
    assert euler_matrix(B).tolist() == [[0, -1, 1], [1, 1, -1], [-1, 0, 1]]
    assert B.dim == 7
    assert [len(r) for r in radical_series(B)] == [4, 1, 0]
    Q = cyclic_b()
    assert cartan_matrix(Q).tolist() == cartan_matrix(B).tolist()
    assert sorted(arrow_counts(B).ravel()) == sorted(arrow_counts(Q).ravel())


def test_stable_endomorphism_algebra(td):
    assert td.C.dim == 1
    assert td.B_to_C.tolist()[0].count(1) == 1


def test_functor_examples(td, fx):
    assert td.F_module(fx.module("2")).dim_vector == (0, 0, 1)
    assert is_isomorphic(td.F_module(fx.module("2")), simple(td.B, 2))
    assert td.H_module(suspend(fx.module("2"))).dim_vector == (1,)
    FT = td.F_module(direct_sum(*td.T))
    regular = direct_sum(*[projective(td.B, i) for i in range(3)])
    assert is_isomorphic(FT, regular)


def test_approximations(td, fx):
    a = td.minimal_right_approx(fx.module("2"))
    assert a.T0_class == (0, 0, 1) and a.other_class == (1, 0, 0)
    a = td.minimal_right_approx(fx.module("T2"))
    assert a.T0_class == (0, 1, 0) and a.other.dim == 0
    a = td.minimal_left_approx(fx.module("2"))
    assert a.T0_class == (0, 1, 0) and a.other_class == (1, 0, 0)
    assert a.sequence.is_exact()


def test_golden_indices(td, fx):
    assert coords(td.index(fx.module("2"))) == [-1, 0, 1]
    assert coords(td.op_index(fx.module("2"))) == [-1, 1, 0]
    for i, T in enumerate(td.T):
        assert coords(td.index(T)) == [int(j == i) for j in range(3)]


def test_theta(td, fx):
    assert coords(td.theta(fx.module("1"))) == [0, -1, 1]
    for T in td.T[1:]:
        assert td.theta(T).is_zero()
    assert td.theta(fx.module("2")).is_zero()


def test_phi(td):
    assert td.phi_matrix.tolist() == [[0], [-1], [1]]
    assert td.apply_phi([0]).is_zero()


def test_additivity_examples(td, fx):
    ses = extension_middle(ext1(fx.module("1"), fx.module("2")).classes()[0])
    res = td.check_index_additivity(ses)
    assert res.ok and coords(res.lhs) == [0, -1, 1] and not res.f_epi
    res = td.check_index_additivity(split_sequence(fx.module("2"), fx.module("1")))
    assert res.ok and res.lhs.is_zero()
    ra = td.minimal_right_approx(fx.module("1"))
    L = td.k0(ra.T0_class)
    assert L == td.index(ra.other) + td.index(fx.module("1"))


def test_generated_sequences(td):
    seqs = td.generated_sequences()
    assert len(seqs) >= 6
    for label, ses in seqs:
        assert td.check_index_additivity(ses).ok, label


def test_stable_index(td, fx):
    assert coords(td.stable_index(fx.module("2"))) == [-1]
    assert coords(td.stable_index(fx.module("1"))) == [1]
    assert coords(td.stable_index(fx.module("T2"))) == [0]


def test_cluster_tilting_verification(fx):
    cat = fx.category
    assert verify_cluster_tilting(cat, [0, 1, 2]).ok
    rep = verify_cluster_tilting(cat, [1, 2])
    assert not rep.ok and any("T1" in d for d in rep.diagnostics) and any("2" in d for d in rep.diagnostics)
    rep = verify_cluster_tilting(cat, [0, 1, 2, 3])
    assert not rep.ok and any("rigid" in d for d in rep.diagnostics)
    with pytest.raises(TiltingError):
        TiltingData(cat, ["T2", "T3"])


def test_all_projective_tilting_gives_the_algebra(fx):
    td = TiltingData(fx.category, ["T2", "T3"], check=False)
    assert td.r == 0 and td.B.dim == fx.algebra.dim
    assert cartan_matrix(td.B).tolist() == cartan_matrix(fx.algebra).tolist()


def test_solve_phi_errors():
    from ccx.laurent import Basis

    v = lambda *c: K0Vector(Basis.SUMMANDS_OF_T, c)
    with pytest.raises(PhiInconsistent):
        solve_phi([("a", (1,), v(1, 0)), ("b", (1,), v(0, 1))], 2, 1)
    with pytest.raises(PhiDeficient):
        solve_phi([("a", (0,), v(0, 0))], 2, 1)
    with pytest.raises(PhiInconsistent):
        solve_phi([("a", (2,), v(1, 0))], 2, 1)


def test_form3_matches_phi_on_projective_rows(td):
    S1 = td.restrict_to_B(td.simple_C(0))
    vals = [euler_form_3(S1, td.simple_B(i)) for i in range(3)]
    assert vals == [0, -1, 1]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(CATALOG), min_size=1, max_size=3),
       st.lists(st.sampled_from(CATALOG), min_size=1, max_size=3),
       st.integers(0, 2**32 - 1))
def test_index_additive_on_random_sums(fx, td, xs, ys, seed):
    rng = np.random.default_rng(seed)
    X = direct_sum(*[fx.module(n) for n in xs])
    Y = direct_sum(*[fx.module(n) for n in ys])
    S = _random_base_change(direct_sum(X, Y), rng)
    assert td.index(S) == td.index(X) + td.index(Y)
    assert td.op_index(S) == td.op_index(X) + td.op_index(Y)
    assert td.theta(S) == td.theta(X) + td.theta(Y)
