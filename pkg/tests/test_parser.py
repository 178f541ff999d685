import pytest
from hypothesis import given, settings

from grasscp.canonical import nf_t3
from grasscp.catalog import circle_chain, w_n
from grasscp.coefficients import FieldSpec
from grasscp.free_algebra import format_poly, nc_commutator, x
from grasscp.parser import ParseError, parse_expr

from .strategies import ncpolys


def test_examples():
    assert parse_expr("[x1,x2]*x1^2*x2^2", FieldSpec(3)) == w_n(1, 3)
    assert parse_expr("x1 o x2 o x3") == circle_chain(3)
    with pytest.raises(ParseError) as err:
        parse_expr("x1 + ")
    assert err.value.position == 5


def test_precedence():
    assert parse_expr("x1 + x2*x3") == x(1) + x(2) * x(3)
    assert parse_expr("-x1^2") == -(x(1) * x(1))
    assert parse_expr("x1*x2 o x3") == parse_expr("(x1*x2) o x3")
    assert parse_expr("[x1,x2,x3]") == nc_commutator(x(1), x(2), x(3))
    assert parse_expr("1/2*x1 + 1/2*x1") == x(1)


def test_scalars_and_contexts():
    assert parse_expr("2*x1") == x(1).scale(2)
    with pytest.raises(ParseError):
        parse_expr("1 + x1")
    assert parse_expr("1 + x1", unital=True).constant_term() == 1
    assert parse_expr("x1^0", unital=True).constant_term() == 1
    with pytest.raises(ParseError):
        parse_expr("x1^0")
    assert parse_expr("3*x1", FieldSpec(3)).is_zero()


@pytest.mark.parametrize("bad", ["x0", "[x1]", "x1 ++", "(x1", "x1 # x2", "1/0*x1", "x1^x2"])
def test_errors(bad):
    with pytest.raises(ParseError):
        parse_expr(bad)


@settings(max_examples=80, deadline=None)
@given(ncpolys(unital=True))
def test_round_trip(f):
    assert parse_expr(format_poly(f), unital=True) == f


@settings(max_examples=40, deadline=None)
@given(ncpolys(field=FieldSpec(5)))
def test_round_trip_mod_p(f):
    assert parse_expr(format_poly(f), FieldSpec(5)) == f


@settings(max_examples=60, deadline=None)
@given(ncpolys())
def test_normal_form_text_round_trip(f):
    nf = nf_t3(f)
    assert nf_t3(parse_expr(str(nf))) == nf
