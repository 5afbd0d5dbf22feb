from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st
import pytest

from freepairs.algebras import CycElem, parse_cyc
from freepairs.errors import DegreeOverflow, InvalidSpec, Not3Integral
from freepairs.weyl import (
    SkewLaurentElem,
    WeylElem,
    WeylInvolutionSpec,
    check_phi_relation,
    parse_skew,
    parse_weyl,
    skew_to_cyclic,
    transported_involution,
    weyl_action_oracle,
    weyl_involution,
    weyl_mul,
    weyl_to_cyclic,
    weyl_to_skew,
)

from strategies import weyl_elems

s, t = WeylElem.gens()
SWAP = WeylInvolutionSpec.named("SWAP")
SIGN = WeylInvolutionSpec.named("SIGN")
GENERAL = [SWAP, SIGN, WeylInvolutionSpec(0, 2, Fraction(1, 2)), WeylInvolutionSpec(3, 4, -2), WeylInvolutionSpec(1, 0, 5)]

polys_q = st.lists(st.integers(-5, 5), min_size=1, max_size=5).map(lambda cs: [Fraction(c) for c in cs])


def test_defining_relation():
    assert weyl_mul(s, t) == t * s + 1
    assert s * t - t * s == WeylElem.scalar(1)


def test_products_in_normal_form():
    assert (t * s) * (t * s) == parse_weyl("t^2*s^2 + t*s")
    assert s * t * s - t * s * t == parse_weyl("t*s^2 + s - t^2*s - t")
    assert str(parse_weyl("s*t")) == "1 * t * s + 1"


@given(weyl_elems())
def test_string_round_trip(u):
    assert parse_weyl(str(u)) == u


def test_action_oracle_examples():
    assert weyl_action_oracle(s, [0, 0, 1], 12) == [0, 2]
    f = [Fraction(3), Fraction(-1), Fraction(4)]
    assert weyl_action_oracle(s * t - t * s, f, 12) == f
    with pytest.raises(DegreeOverflow):
        weyl_action_oracle(t**5, [1, 1, 1], 6)


def _act(u, f):
    return weyl_action_oracle(u, f, 40)


@given(weyl_elems(), weyl_elems(), polys_q)
def test_product_matches_operator_action(u, v, f):
    assert _act(u * v, f) == _act(u, _act(v, f))


@given(weyl_elems(), weyl_elems(), weyl_elems())
def test_associativity(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * 1 == u == 1 * u


# -- involutions ---------------------------------------------------------------------------------


def test_swap_and_sign_examples():
    assert weyl_involution(SWAP, t * s) == t * s
    assert weyl_involution(SWAP, s * t * s) == t * s * t
    assert weyl_involution(SIGN, t * s + s * t) == -(t * s + s * t)


def test_invalid_spec():
    with pytest.raises(InvalidSpec):
        WeylInvolutionSpec(1, 1, 1)
    with pytest.raises(InvalidSpec):
        WeylInvolutionSpec.named("ROTATE")


@given(st.sampled_from(GENERAL), weyl_elems(), weyl_elems())
def test_involution_laws(spec, u, v):
    assert spec.apply(u * v) == spec.apply(v) * spec.apply(u)
    assert spec.apply(spec.apply(u)) == u


# -- the maps into the skew-Laurent ring and the cyclic algebra ------------------------------------


def test_phi_examples():
    assert check_phi_relation()
    assert weyl_to_skew(t * s) == parse_skew("X")
    assert weyl_to_skew(s * t * s - t * s * t) == parse_skew("Y^-1*X^2 - X*Y")
    assert weyl_to_skew(WeylElem.scalar(1)) == SkewLaurentElem({0: 1})


def test_skew_shift_rule():
    X, Y = SkewLaurentElem.gens()
    assert Y**-1 * X * Y == X + 1
    assert X * Y == Y * (X + 1)


@given(weyl_elems(max_terms=2, max_deg=2), weyl_elems(max_terms=2, max_deg=2))
def test_phi_is_multiplicative(u, v):
    assert weyl_to_skew(u * v) == weyl_to_skew(u) * weyl_to_skew(v)


def test_tau_phi_examples():
    i, j = CycElem.gens()
    assert weyl_to_cyclic(t * s) == i
    assert weyl_to_cyclic(s * t * s - t * s * t) == j.inverse() * i * i - i * j
    assert weyl_to_cyclic(s * t - t * s) == CycElem.scalar(i.desc, 1)
    with pytest.raises(Not3Integral):
        weyl_to_cyclic(WeylElem.scalar(Fraction(1, 3)))


@given(weyl_elems(max_terms=2, max_deg=2))
def test_two_routes_into_cyclic_algebra(u):
    assert weyl_to_cyclic(u) == skew_to_cyclic(weyl_to_skew(u))


@given(weyl_elems(max_terms=2, max_deg=2), weyl_elems(max_terms=2, max_deg=2))
def test_tau_phi_is_multiplicative(u, v):
    assert weyl_to_cyclic(u * v) == weyl_to_cyclic(u) * weyl_to_cyclic(v)


def test_transported_involutions():
    swap = transported_involution(SWAP)
    assert swap.check() == []
    assert swap.i_star == parse_cyc("i")
    assert swap.j_star == parse_cyc("(i*j^2 + j^2)/b")
    assert str(swap.theta["b"]) == "a/b"
    sign = transported_involution(SIGN)
    assert sign.check() == []
    assert sign.i_star == parse_cyc("2*i + 2")
    assert sign.j_star == parse_cyc("2*j")


@given(st.sampled_from([SWAP, SIGN]), weyl_elems(max_terms=2, max_deg=2))
def test_transported_involution_commutes_with_tau_phi(spec, u):
    star = transported_involution(spec)
    assert weyl_to_cyclic(spec.apply(u)) == star(weyl_to_cyclic(u))
