import pytest
from hypothesis import given, settings

from grasscp.canonical import (
    SSElement,
    circle_expansion,
    congruent_t3,
    enumerate_bss,
    enumerate_ss,
    in_bss,
    in_M,
    in_R1,
    is_extremal,
    nf_t3,
    venkova_compare,
    venkova_condition,
)
from grasscp.catalog import circle_chain
from grasscp.decide import is_identity
from grasscp.free_algebra import NCPoly
from grasscp.grassmann import AlgebraSpec
from grasscp.parser import parse_expr

from .strategies import ncpolys

P = parse_expr


def ss(beginning=(), end=()):
    return SSElement(tuple(beginning), tuple(end))


def test_straightening_examples():
    assert nf_t3(P("x2*x1")) == nf_t3(P("x1*x2 - [x1,x2]"))
    assert str(nf_t3(P("x2*x1"))) == "x1*x2 - [x1,x2]"
    assert nf_t3(P("[x1,x2]*[x1,x3]")).is_zero()
    assert nf_t3(P("[x1,x3]*[x2,x4]")) == nf_t3(P("-[x1,x2]*[x3,x4]"))
    nf = nf_t3(P("x1*[x1,x2]*x3"))
    assert nf.terms == {ss([(3, 1)], [(1, 2, 1, 0)]): 1}
    assert str(nf) == "x3*[x1,x2]*x1"


def test_triple_commutator_vanishes():
    assert nf_t3(P("[x1,x2,x3]")).is_zero()
    assert congruent_t3(P("[x1,x2]*x3"), P("x3*[x1,x2]"))


def test_unital_constant_is_kept():
    nf = nf_t3(P("3 + x2*x1", unital=True))
    assert nf.constant == 3
    assert nf.reassemble() - P("3 + x1*x2 - [x1,x2]", unital=True) == NCPoly.zero(unital=True)


def test_ss_invariants():
    with pytest.raises(ValueError):
        ss()
    with pytest.raises(ValueError):
        ss([(2, 1), (1, 1)])
    with pytest.raises(ValueError):
        ss([(1, 1)], [(1, 2, 0, 0)])
    u = ss([(1, 2)], [(2, 3, 1, 0), (4, 5, 0, 0)])
    assert (u.lbeg, u.lend, u.degree) == (1, 2, 7)


def test_order_examples():
    x1, x2 = ss([(1, 1)]), ss([(2, 1)])
    c12 = ss((), [(1, 2, 0, 0)])
    assert venkova_compare(x1, ss([(1, 1), (2, 1)])) == 1  # lower degree is greater
    assert venkova_condition(x1, ss([(1, 1), (2, 1)])) == 1
    assert venkova_compare(c12, ss([(1, 1), (2, 1)])) == -1  # more commutators is smaller
    assert venkova_condition(ss([(1, 1), (2, 1)]), c12) == 2
    assert venkova_compare(x2, x1) == 1
    assert venkova_condition(x2, x1) == 3
    assert venkova_compare(x1, x1) == 0 and venkova_condition(x1, x1) is None


def test_condition_four():
    # same degrees and lend; x2 in the beginning of v but in the end of u
    u = ss([(1, 1)], [(2, 3, 0, 0)])
    v = ss([(2, 1)], [(1, 3, 0, 0)])
    assert venkova_condition(u, v) == 4 or venkova_condition(v, u) == 4


def test_enumerate_ss_counts():
    got = enumerate_ss([1, 2], 2)
    assert set(map(str, got)) == {"x1", "x2", "x1^2", "x2^2", "x1*x2", "[x1,x2]"}


def test_bss_small_case():
    # exponents and the degree bound leave only these for m=2
    assert [str(u) for u in enumerate_bss(2, 0, 2, [1, 2])] == ["x2", "x1", "[x1,x2]"]
    assert all(in_bss(u, 3) for u in enumerate_bss(3, 0, 3))


def test_extremal():
    u = ss([(1, 1), (2, 1)])
    assert is_extremal(u, 3)
    assert not any(is_extremal(v, 4) for v in enumerate_bss(4, 0, 4))


def test_r1_and_m():
    assert in_R1(ss([(1, 1)]))
    assert not in_R1(ss((), [(1, 2, 0, 0)]))
    assert not in_R1(ss([(1, 3)]), 3)
    assert in_R1(ss([(1, 3), (2, 1)]), 3)
    # membership tests in the M families are total functions
    for u in enumerate_bss(3, 0, 3):
        assert in_M(u, 1, 1, 3) in (True, False)


def test_circle_expansion_examples():
    assert circle_expansion(1) == P("x1")
    assert nf_t3(circle_expansion(2) - P("2*x1*x2 - [x1,x2]")).is_zero()
    expect = P("4*x1*x2*x3 - 2*x3*[x1,x2] - 2*x2*[x1,x3] - 2*x1*[x2,x3]")
    assert nf_t3(circle_expansion(3) - expect).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_circle_expansion_matches_chain(n):
    assert nf_t3(circle_chain(n) - circle_expansion(n)).is_zero()


G6 = AlgebraSpec(6)


@settings(max_examples=40, deadline=None)
@given(ncpolys(unital=True))
def test_normal_form_is_sound(f):
    # f minus its normal form vanishes on G(6), which sees all of T^(3) up to degree 3
    diff = f - nf_t3(f).reassemble()
    assert is_identity(diff, G6, strategy="generic").is_identity


@settings(max_examples=60, deadline=None)
@given(ncpolys(), ncpolys())
def test_normal_form_idempotent_and_linear(f, g):
    nf = nf_t3(f)
    assert nf_t3(nf.reassemble()) == nf
    assert nf_t3(f + g.scale(3)).reassemble() == (nf.reassemble() + nf_t3(g).reassemble().scale(3))


@settings(max_examples=60, deadline=None)
@given(ncpolys())
def test_zero_normal_form_means_identity(f):
    if nf_t3(f).is_zero():
        assert is_identity(f, AlgebraSpec(6, False), strategy="generic").is_identity
