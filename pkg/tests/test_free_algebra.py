import pytest
from hypothesis import given, settings, strategies as st

from grasscp.coefficients import QQ, FieldMismatchError, FieldSpec
from grasscp.free_algebra import (
    ContextError,
    NCPoly,
    UnassignedVariableError,
    evaluate,
    format_poly,
    is_essential,
    multihomog_components,
    multilinearize,
    multilinearize_all,
    nc_circle,
    nc_commutator,
    substitute,
    x,
)
from grasscp.grassmann import AlgebraSpec, GrassmannElement as GE, NonunitaryError, generic_element
from grasscp.parser import parse_expr

from .strategies import grassmann_elements, ncpolys

P = parse_expr
x1, x2, x3 = x(1), x(2), x(3)


def test_commutator_and_circle_expansions():
    assert nc_commutator(x1, x2) == P("x1*x2 - x2*x1")
    assert nc_circle(x1, x2) == P("x1*x2 + x2*x1")
    assert nc_commutator(x1, x2, x3) == P("x1*x2*x3 - x2*x1*x3 - x3*x1*x2 + x3*x2*x1")


def test_substitute():
    assert substitute(nc_commutator(x1, x2), {1: x2, 2: x1}) == -nc_commutator(x1, x2)
    assert substitute(P("x1^2"), {1: x1 + x2}) == P("x1^2 + x1*x2 + x2*x1 + x2^2")
    assert substitute(x1, {1: x1 * x2}) == x1 * x2
    # unmapped variables stay put
    assert substitute(x1 * x3, {1: x2}) == x2 * x3


def test_evaluate_examples():
    G2 = AlgebraSpec(2)
    e1, e2 = GE.gen(G2, 1), GE.gen(G2, 2)
    assert evaluate(nc_commutator(x1, x2), {1: e1, 2: e2}) == GE.basis(G2, (1, 2), 2)
    h2 = P("[x1,x2]*[x3,x4]")
    gens = {i: generic_element(G2) for i in range(1, 5)}
    assert evaluate(h2, gens).is_zero()
    G03 = AlgebraSpec(3, False)
    val = evaluate(nc_circle(x1, x2), {1: GE.basis(G03, (1, 2)), 2: GE.gen(G03, 3)})
    assert val == GE.basis(G03, (1, 2, 3), 2)


def test_evaluate_errors():
    G2 = AlgebraSpec(2)
    with pytest.raises(UnassignedVariableError):
        evaluate(x1 * x2, {1: GE.gen(G2, 1)})
    with pytest.raises(NonunitaryError):
        evaluate(P("1 + x1", unital=True), {1: GE.gen(AlgebraSpec(2, False), 1)})


def test_unital_constant():
    G2 = AlgebraSpec(2)
    f = P("2 + x1", unital=True)
    assert evaluate(f, {1: GE.gen(G2, 1)}) == GE.scalar(G2, 2) + GE.gen(G2, 1)
    with pytest.raises(ContextError):
        NCPoly({(): 1}, QQ, False)


def test_multihomogeneous_components():
    comps = multihomog_components(x1 + x1 * x2)
    assert comps == [((1,), x1), ((1, 1), x1 * x2)]
    assert len(multihomog_components(nc_circle(x1, x2))) == 1
    assert multihomog_components(NCPoly.zero()) == []


def test_multilinearize():
    assert multilinearize(P("x1^2"), 1, [2]) == P("x1*x2 + x2*x1")
    lin, copies = multilinearize_all(P("x1^3"))
    assert len(lin) == 6 and all(c == 1 for _, c in lin.items())
    assert len(copies[1]) == 3
    assert multilinearize(P("x1*x2*x1"), 1, [3]) == P("x1*x2*x3 + x3*x2*x1")


def test_is_essential():
    assert is_essential(nc_circle(x1, x2))
    assert not is_essential(x1 + x1 * x2)
    assert is_essential(x1 * x2 * x3)


def test_printing():
    assert format_poly(P("x2*x1 - 3*x1^2")) == "-3*x1^2 + x2*x1"
    assert format_poly(NCPoly.zero()) == "0"


def test_context_mismatch():
    with pytest.raises(ContextError):
        x(1) + x(1, unital=True)
    with pytest.raises(FieldMismatchError):
        x(1) + x(1, FieldSpec(3))


@settings(max_examples=50, deadline=None)
@given(ncpolys(), ncpolys(), ncpolys())
def test_substitution_is_a_homomorphism(f, g, h):
    s = {1: g, 2: h}
    assert substitute(f * g, s) == substitute(f, s) * substitute(g, s)
    assert substitute(f + g, s) == substitute(f, s) + substitute(g, s)


G3 = AlgebraSpec(3)


@settings(max_examples=40, deadline=None)
@given(ncpolys(unital=True), ncpolys(unital=True), st.lists(grassmann_elements(G3), min_size=3, max_size=3))
def test_evaluation_is_a_homomorphism(f, g, imgs):
    s = dict(zip((1, 2, 3), imgs))
    assert evaluate(f * g, s) == evaluate(f, s) * evaluate(g, s)
    assert evaluate(f - g, s) == evaluate(f, s) - evaluate(g, s)


@settings(max_examples=40, deadline=None)
@given(ncpolys())
def test_multilinearization_specializes_back(f):
    # x_new -> x_v turns the linearization in one variable into d! * f
    for deg, comp in multihomog_components(f):
        d = comp.degree_in(1)
        if d < 2:
            continue
        fresh = list(range(10, 10 + d - 1))
        lin = multilinearize(comp, 1, fresh)
        back = substitute(lin, {v: x1 for v in fresh})
        fact = 1
        for k in range(2, d + 1):
            fact *= k
        assert back == comp.scale(fact)
