import pytest
from hypothesis import given, settings

from grasscp.coefficients import QQ, CoeffPoly, FieldSpec, IndeterminateSource
from grasscp.grassmann import (
    AlgebraMismatchError,
    AlgebraSpec,
    GrassmannElement as GE,
    NonunitaryError,
    commutes_with_basis,
    format_grassmann,
    g_circle,
    g_commutator,
    g_mul,
    g_power,
    generic_element,
    is_central_element,
    mask_sign,
    parity_split,
    parse_grassmann,
    support,
)

from .strategies import grassmann_elements

G2 = AlgebraSpec(2)
G3 = AlgebraSpec(3)
G03 = AlgebraSpec(3, False)
G04 = AlgebraSpec(4, False)


def e(spec, *idx, c=1):
    return GE.basis(spec, idx, c)


def test_products():
    assert g_mul(e(G3, 1), e(G3, 2)) == e(G3, 1, 2)
    assert g_mul(e(G3, 2), e(G3, 1)) == -e(G3, 1, 2)
    assert g_mul(e(G3, 1), e(G3, 1, 2)).is_zero()
    one = GE.one(G2)
    assert (one + e(G2, 1)) * (one + e(G2, 2)) == one + e(G2, 1) + e(G2, 2) + e(G2, 1, 2)


def test_sign_is_inversion_count():
    # {2,3} * {1} -> two inversions
    assert mask_sign(0b110, 0b001) == 1
    assert mask_sign(0b010, 0b001) == -1


def test_parity_split():
    pp = parity_split(e(G3, 1) + e(G3, 1, 2))
    assert pp.even == e(G3, 1, 2) and pp.odd == e(G3, 1)
    pp = parity_split(GE.one(G3) + e(G3, 1, 2, 3))
    assert pp.even == GE.one(G3) and pp.odd == e(G3, 1, 2, 3)
    z = parity_split(GE.zero(G3))
    assert z.even.is_zero() and z.odd.is_zero()


def test_powers():
    g = e(G03, 1) + e(G03, 2, 3)
    assert g_power(g, 2) == e(G03, 1, 2, 3, c=2)
    g3 = AlgebraSpec(3, False, FieldSpec(3))
    assert g_power(e(g3, 1) + e(g3, 2, 3), 3).is_zero()
    g2 = AlgebraSpec(2, True, FieldSpec(3))
    assert g_power(GE.one(g2) + e(g2, 1), 3) == GE.one(g2)
    with pytest.raises(NonunitaryError):
        g_power(e(G03, 1), 0)


def test_commutator_and_circle():
    assert g_commutator(e(G3, 1), e(G3, 2)) == e(G3, 1, 2, c=2)
    assert g_commutator(e(G04, 1, 2) + e(G04, 3), e(G04, 4)) == e(G04, 3, 4, c=2)
    assert g_circle(e(G03, 1, 2), e(G03, 3)) == e(G03, 1, 2, 3, c=2)


def test_support():
    assert support(e(G3, 1, 2) + e(G3, 3)) == {1, 2, 3}
    assert support(GE.one(G3)) == frozenset()
    assert support(GE.zero(G3)) == frozenset()


def test_centre_examples():
    assert is_central_element(e(G2, 1, 2))
    assert not is_central_element(e(G2, 1))
    assert is_central_element(e(G03, 1, 2, 3))
    assert not is_central_element(e(G04, 1, 2, 3))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("unital", [True, False])
def test_centre_matches_brute_force(m, unital):
    spec = AlgebraSpec(m, unital)
    for mask in spec.basis_masks():
        b = GE._raw(spec, {mask: 1})
        assert is_central_element(b) == commutes_with_basis(b)


def test_generic_element_shapes():
    g = generic_element(G2, IndeterminateSource())
    assert str(g) == "(t0) + (t1)*e{1} + (t2)*e{2} + (t3)*e{1,2}"
    g0 = generic_element(AlgebraSpec(2, False), IndeterminateSource())
    assert len(g0) == 3 and g0.coefficient(()) == 0
    assert len(generic_element(AlgebraSpec(1, False))) == 1


def test_nonunitary_rejects_scalars():
    with pytest.raises(NonunitaryError):
        GE.one(G03)
    with pytest.raises(NonunitaryError):
        GE(G03, {0: 1})


def test_mismatched_algebras():
    with pytest.raises(AlgebraMismatchError):
        e(G3, 1) * e(AlgebraSpec(4), 1)


def test_text_round_trip():
    x = GE.one(G3).scale(-2) + e(G3, 2, 1) + e(G3, 1, 2, 3, c=3)
    text = format_grassmann(x)
    assert text == "-2 - e{1,2} + 3*e{1,2,3}"
    assert parse_grassmann(text, G3) == x
    assert parse_grassmann("0", G3).is_zero()


@settings(max_examples=60, deadline=None)
@given(grassmann_elements(AlgebraSpec(4)), grassmann_elements(AlgebraSpec(4)), grassmann_elements(AlgebraSpec(4)))
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(grassmann_elements(AlgebraSpec(4), 1), grassmann_elements(AlgebraSpec(4), 1))
def test_odd_elements_anticommute(h, u):
    assert h * u == -(u * h)
    assert (h * h).is_zero()


@settings(max_examples=40, deadline=None)
@given(grassmann_elements(AlgebraSpec(4, False, FieldSpec(3))))
def test_power_formula_and_nilpotency(g):
    c, h = parity_split(g).even, parity_split(g).odd
    for n in range(2, 6):
        assert g_power(g, n) == g_power(c, n) + (g_power(c, n - 1) * h).scale(n)
    assert g_power(g, 3).is_zero()
    if g:
        assert g_power(g, len(g) + 1).is_zero()


@settings(max_examples=40, deadline=None)
@given(grassmann_elements(AlgebraSpec(4)))
def test_round_trip_property(a):
    assert parse_grassmann(format_grassmann(a), a.algebra) == a
