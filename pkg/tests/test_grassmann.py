import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccx.algebra import semisimple_algebra
from ccx.grassmann import (
    CapExceeded,
    GrassmannError,
    GrassmannQuery,
    InterpolationError,
    degree_bound,
    enumerate_submodules,
    euler_char,
    euler_table,
    fit_counting_polynomial,
    point_counts,
    primes_for,
    reduce_module,
)
from ccx.modules import direct_sum, projective, simple, zero_module

K = semisimple_algebra(1)


def S():
    return simple(K, 0)


def gaussian(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def test_enumeration_examples():
    subs = enumerate_submodules(S(), 2)
    assert {e: len(v) for e, v in subs.items()} == {(0,): 1, (1,): 1}
    assert point_counts(direct_sum(S(), S()), 2)[(1,)] == 3
    assert point_counts(zero_module(K), 2) == {(0,): 1}


def test_euler_examples():
    assert euler_char(GrassmannQuery(S(), (1,))) == 1
    assert euler_char(GrassmannQuery(direct_sum(S(), S()), (1,))) == 2
    assert euler_char(GrassmannQuery(direct_sum(S(), S(), S()), (0,))) == 1
    t = euler_table(direct_sum(S(), S()))
    assert t.polynomials[(1,)].coeffs == (1, 1)
    assert [t.counts[q][(1,)] for q in (2, 3, 5, 7, 11)] == [3, 4, 6, 8, 12]


def test_class_out_of_range():
    with pytest.raises(GrassmannError):
        euler_char(GrassmannQuery(S(), (2,)))


def test_cap():
    big = direct_sum(*[S()] * 3)
    with pytest.raises(CapExceeded):
        enumerate_submodules(big, 2, cap=2)


def test_interpolation_failure_is_reported():
    with pytest.raises(InterpolationError):
        fit_counting_polynomial({2: 1, 3: 5, 5: 2}, 1)
    with pytest.raises(InterpolationError):
        fit_counting_polynomial({2: 1}, 3)
    p = fit_counting_polynomial({2: 3, 3: 4, 5: 6, 7: 8}, 1)
    assert p(1) == 2 and str(p) == "1*q + 1"


def test_prime_list_extension():
    assert primes_for(0) == [2, 3, 5, 7, 11]
    assert primes_for(6) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert degree_bound((2, 2), (1, 1)) == 2


def test_counts_on_indecomposable_projective(A):
    # the uniserial module (1/2) has exactly one submodule in each possible class
    counts = point_counts(projective(A, 0), 3)
    assert counts == {(0, 0): 1, (0, 1): 1, (1, 1): 1}


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=2).filter(lambda d: 0 < sum(d) <= 3),
       st.sampled_from([2, 3, 5]))
def test_semisimple_counts_are_gaussian_binomials(dims, q):
    n = len(dims)
    k = semisimple_algebra(n, q)
    N = direct_sum(*[simple(k, i) for i, d in enumerate(dims) for _ in range(d)])
    counts = point_counts(N)
    for e in itertools.product(*[range(d + 1) for d in dims]):
        expected = 1
        for d, x in zip(dims, e):
            expected *= gaussian(d, x, q)
        assert counts[e] == expected


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=2).filter(lambda d: 0 < sum(d) <= 3))
def test_semisimple_euler_characteristics_are_binomials(dims):
    k = semisimple_algebra(2)
    N = direct_sum(*[simple(k, i) for i, d in enumerate(dims) for _ in range(d)])
    t = euler_table(N)
    for e, chi in t.chi.items():
        assert chi == comb(dims[0], e[0]) * comb(dims[1], e[1])
    assert sum(t.chi.values()) == t.total_polynomial()(1)


def test_convolution_over_direct_sums(A, mods):
    pieces = [mods["T2"], mods["1"]]
    tables = [euler_table(M) for M in pieces]
    direct = euler_table(direct_sum(*pieces))
    conv = {}
    for e1, x1 in tables[0].chi.items():
        for e2, x2 in tables[1].chi.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            conv[e] = conv.get(e, 0) + x1 * x2
    assert {e: v for e, v in conv.items() if v} == {e: v for e, v in direct.chi.items() if v}


def test_zero_residual_on_all_used_primes(mods):
    t = euler_table(direct_sum(mods["T2"], mods["T3"]))
    for e, poly in t.polynomials.items():
        for q, counts in t.counts.items():
            assert poly(q) == counts.get(e, 0)


def test_reduction_keeps_module_structure(mods):
    M = reduce_module(mods["T2"], 7)
    assert M.p == 7 and M.dim_vector == (1, 1)
