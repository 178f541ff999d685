from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grasscp.coefficients import QQ, CoeffPoly, FieldSpec, IndeterminateSource, OutOfScopeError, parse_scalar


def test_char_two_is_out_of_scope():
    with pytest.raises(OutOfScopeError):
        FieldSpec(2)


@pytest.mark.parametrize("bad", [-1, 1, 4, 9, 15])
def test_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        FieldSpec(bad)


def test_reduce_fractions():
    F5 = FieldSpec(5)
    assert F5.reduce(Fraction(1, 2)) == 3
    assert F5.reduce(-1) == 4
    assert QQ.reduce(Fraction(4, 2)) == 2 and type(QQ.reduce(Fraction(4, 2))) is int
    with pytest.raises(ZeroDivisionError):
        F5.reduce(Fraction(1, 5))


def test_inverse_and_division():
    F7 = FieldSpec(7)
    for a in range(1, 7):
        assert F7.reduce(a * F7.inv(a)) == 1
    assert QQ.div(1, 3) == Fraction(1, 3)


def test_parse_scalar():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar("-2", FieldSpec(3)) == 1


def test_coeffpoly_arithmetic_and_printing():
    t0, t1 = CoeffPoly.var(0), CoeffPoly.var(1)
    f = (t0 + t1) ** 2
    assert str(f) == "2*t0*t1 + t0^2 + t1^2"
    assert f - t0 * t0 - t1 * t1 == 2 * t0 * t1
    assert (t0 - t0).is_zero()
    assert f.evaluate({0: 1, 1: 2}) == 9
    assert f.evaluate({0: 3}) == 9  # missing indeterminates read as 0


def test_coeffpoly_mod_p():
    F3 = FieldSpec(3)
    t = CoeffPoly.var(1, F3)
    assert (t + 1) ** 3 == t ** 3 + 1
    assert str(CoeffPoly.constant(-1, F3)) == "2"


def test_indeterminate_source_never_repeats():
    src = IndeterminateSource()
    a = src.fresh()
    base = src.block(4)
    b = src.fresh()
    assert a == 0 and base == 1 and b == 5 and src.used == 6


polys = st.dictionaries(
    st.lists(st.tuples(st.integers(0, 2), st.integers(1, 2)), max_size=2).map(tuple),
    st.integers(-3, 3),
    max_size=4,
).map(CoeffPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + 0 == a and a * 1 == a
