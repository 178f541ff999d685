from fractions import Fraction

import pytest

from grasscp.catalog import b_m, circle_chain, cp_generators, h_j, r_0, t_ideal_generators, w_n
from grasscp.coefficients import FieldSpec, OutOfScopeError
from grasscp.free_algebra import format_poly, nc_circle
from grasscp.grassmann import AlgebraSpec
from grasscp.parser import parse_expr


def test_parameters():
    assert [b_m(m) for m in range(1, 7)] == [1, 2, 2, 3, 3, 4]
    assert r_0(9, 3) == 1 and r_0(3, 3) == Fraction(2, 5)
    with pytest.raises(ValueError):
        r_0(3, 0)


def test_named_families():
    assert h_j(2) == parse_expr("[x1,x2]*[x3,x4]")
    F3 = FieldSpec(3)
    assert w_n(1, 3) == parse_expr("[x1,x2]*x1^2*x2^2", F3)
    x1, x2, x3 = (parse_expr(f"x{i}") for i in (1, 2, 3))
    assert circle_chain(3) == nc_circle(nc_circle(x1, x2), x3)
    assert circle_chain(2, start=4) == parse_expr("x4 o x5")


def labels(gens):
    return [l for l, _ in gens.labelled()]


def test_t_ideal_sets():
    g = t_ideal_generators(AlgebraSpec(4))
    assert [format_poly(f) for f in g][1] == format_poly(h_j(3, unital=True))
    g = t_ideal_generators(AlgebraSpec(4, False, FieldSpec(3)))
    assert labels(g) == ["[x1,x2,x3]", "x1^3", "circle chain of length 3"]
    g = t_ideal_generators(AlgebraSpec(5, False, FieldSpec(3)))
    assert len(g) == 4
    g = t_ideal_generators(AlgebraSpec(9, False, FieldSpec(3)))
    assert "w_1" in labels(g)


def test_cp_sets():
    g = cp_generators(AlgebraSpec(4))
    assert labels(g) == ["[x1,x2]", "[x1,x2][x3,x4]", "x5*h_2"]
    g = cp_generators(AlgebraSpec(4, True, FieldSpec(3)))
    assert "x1^3" in labels(g) and "x5^3*w_2" in labels(g)
    assert g.params["semantics"] == "infinite field"
    g = cp_generators(AlgebraSpec(3, False))
    assert g.params["chain_length"] == 2
    assert cp_generators(AlgebraSpec(3, False), verbatim=True).params["chain_length"] == 1


def test_out_of_scope():
    with pytest.raises(OutOfScopeError):
        cp_generators(AlgebraSpec(3, True, FieldSpec(2)))
    with pytest.raises(ValueError):
        cp_generators(AlgebraSpec(1))
