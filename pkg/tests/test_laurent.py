import pytest
from hypothesis import given, settings, strategies as st

from ccx.laurent import Basis, K0Vector, LaurentPoly, format_laurent, laurent_specialize, parse_laurent

N = 3


def x(i, n=N):
    return LaurentPoly.variable(i, n)


polys = st.dictionaries(
    st.tuples(*[st.integers(-2, 2)] * N), st.integers(-3, 3), max_size=4
).map(lambda d: LaurentPoly(N, d))


def test_examples():
    assert x(1) * x(1) ** -1 == LaurentPoly.one(N)
    assert (x(1) + x(2)) * 1 == x(1) + x(2)
    m = x(1) ** -1 * x(2) + x(1) ** -1 * x(3)
    assert m * x(1) == x(2) + x(3)
    assert str(m) == "x1^-1*x2 + x1^-1*x3"


def test_specialize_examples():
    assert laurent_specialize(x(1) * x(3) ** -1, [3]) == LaurentPoly.variable(1, 2)
    assert laurent_specialize((x(2) + x(3)) * x(1) ** -1, [2, 3]) == LaurentPoly(1, {(-1,): 2})
    assert laurent_specialize(LaurentPoly.one(N), {1: 1, 2: 1}) == LaurentPoly.one(1)


def test_mismatched_variable_counts_rejected():
    with pytest.raises(ValueError):
        x(1, 2) + x(1, 3)


@settings(max_examples=80, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a


@settings(max_examples=80, deadline=None)
@given(polys, polys, st.sets(st.integers(1, N), max_size=N))
def test_specialization_is_a_ring_homomorphism(a, b, fixed):
    s = lambda f: laurent_specialize(f, fixed)
    assert s(a * b) == s(a) * s(b)
    assert s(a + b) == s(a) + s(b)


@settings(max_examples=80, deadline=None)
@given(polys)
def test_text_round_trip(a):
    assert parse_laurent(format_laurent(a), N) == a


def test_k0_vectors():
    v = K0Vector(Basis.SUMMANDS_OF_T, (-1, 0, 1))
    assert str(v) == "-1*[T1] + 1*[T3]"
    assert (v - v).is_zero()
    with pytest.raises(ValueError):
        v + K0Vector(Basis.SIMPLES_OF_C, (1, 0, 0))
