import json

from hypothesis import given
from hypothesis import strategies as st
import pytest

from freepairs.arith.ext import artin_schreier, quadratic_a, quadratic_b
from freepairs.arith.fields import GF3, QQ
from freepairs.errors import InvalidPlace, ZeroInput
from freepairs.places import (
    BELOW,
    hensel_valuation,
    make_place,
    named_place,
    norm_to_base,
    parse_residue,
    place_from_json,
    place_to_json,
    residue_descriptor,
    residue_of,
    valuation_of,
)

from strategies import polys

L = quadratic_a(QQ)
K = quadratic_b(QQ)
KI = artin_schreier(GF3)
PLACE_NAMES = ["P(1+i)", "P(1+2i)", "P(1+2j)", "P(alpha)", "P(mu)", "P(1+(1+1/a)i)", "P(1-(1-1/a)i)", "P(1+i^2)", "P(i)"]


def _place(desc, var, prime, image, pi):
    p = desc.field.parse(prime)
    rd = residue_descriptor(desc.field, var, p)
    return make_place(desc, var, p, parse_residue(rd, var, image), desc.parse(pi))


def test_place_1_plus_i():
    pl = _place(L, "a", "1-a", "-1", "1+i")
    assert norm_to_base(L.parse("1+i")) == QQ.parse("1-a")
    assert valuation_of(pl, L.parse("1+i")) == 1
    assert valuation_of(pl, L.parse("-1+i")) == 0
    assert residue_of(pl, L.parse("-1+i")) == pl.parse_residue("-2")


def test_place_mu():
    pl = _place(K, "b", "1+b+b^2", "-(1+b)", "1+b+j")
    assert norm_to_base(K.parse("1+b+j")) == QQ.parse("1+b+b^2")
    assert pl.valuation(K.parse("(1+b+j)^2")) == 2
    assert pl.valuation(K.parse("1+b-j")) == 0


def test_cubic_place():
    pl = _place(KI, "a", "1+a^2", "a", "1+i^2")
    assert norm_to_base(KI.parse("1+i^2")) == GF3.parse("1+a^2")
    assert pl.residue(KI.parse("i")) == pl.parse_residue("a")
    assert pl.residue(KI.parse("a")) == pl.parse_residue("a")
    assert str(pl.residue(KI.parse("i"))) == "abar"


def test_alpha_valuations():
    pl = named_place("P(alpha)")
    assert pl.valuation(K.parse("(-1+b+j)^2")) == 2
    assert pl.valuation(K.parse("(1-b+j)^2")) == 0
    assert not pl.residue(K.parse("-1+b-j")).is_zero()
    assert norm_to_base(K.parse("-1+b+j")) == QQ.parse("1-3*b+b^2")


def test_weyl2_place_diagonal():
    pl = named_place("P(i)")
    entries = ["2/a*(i+1)^2*(i+2)", "2/a*i^2*(i+1)", "2/a*(i+2)^2*i"]
    assert [pl.valuation(KI.parse(e)) for e in entries] == [-1, 1, 0]


def test_trivial_values():
    pl = named_place("P(1+i)")
    assert pl.valuation(L.one) == 0
    assert pl.residue(L.one) == pl.residue_desc.one
    assert norm_to_base(L.one) == QQ.one
    assert pl.residue(L.parse("1/(1-a)")) is BELOW
    with pytest.raises(ZeroInput):
        pl.valuation(L.zero)


def test_invalid_places():
    with pytest.raises(InvalidPlace) as e:
        _place(L, "a", "1-a", "-1", "(1+i)^2")
    assert e.value.reason == InvalidPlace.RAMIFICATION_UNSUPPORTED
    with pytest.raises(InvalidPlace) as e:
        _place(L, "a", "1-a", "2", "1+i")
    assert e.value.reason == InvalidPlace.GEN_IMAGE_NOT_ROOT
    with pytest.raises(InvalidPlace) as e:
        _place(L, "a", "1-a", "-1", "1-i")
    assert e.value.reason == InvalidPlace.UNIFORMIZER_NOT_IN_PRIME
    with pytest.raises(InvalidPlace) as e:
        _place(K, "b", "b", "0", "j")
    assert e.value.reason == InvalidPlace.RAMIFICATION_UNSUPPORTED


def test_conjugate_pairs_against_norm():
    # ν(x) equals ord of the norm when the conjugate is a unit
    for name, x, xbar in [("P(1+i)", "1+i", "-1+i"), ("P(alpha)", "-1+b+j", "-1+b-j"), ("P(mu)", "1+b+j", "1+b-j")]:
        pl = named_place(name)
        d = pl.descriptor
        assert pl.valuation(d.parse(xbar)) == 0
        assert pl.valuation(d.parse(x)) == pl.ord(norm_to_base(d.parse(x)))


def test_json_round_trip():
    for name in PLACE_NAMES:
        pl = named_place(name)
        data = json.loads(json.dumps(place_to_json(pl)))
        back = place_from_json(data)
        assert back.to_json() == pl.to_json()
        x = pl.descriptor.parse("3+a") + pl.uniformizer**2
        assert back.valuation(x) == pl.valuation(x)


def test_spec_style_descriptor():
    pl = place_from_json({"minpoly": "i^2-a", "base_var": "a", "base_prime": "1-a", "gen_image": "-1", "uniformizer": "1+i"})
    assert pl.valuation(pl.descriptor.parse("(1+i)^3*(2+i)")) == 3


# -- properties -------------------------------------------------------------------------------------


def _elements(pl):
    d = pl.descriptor
    coeff = polys(d.field, ("a", "b"), 3, 2)

    @st.composite
    def build(draw):
        x = d.element([draw(coeff) for _ in range(d.degree)])
        if x.is_zero():
            x = d.one
        k = draw(st.integers(-1, 2))
        return x * pl.uniformizer**k

    return build()


@given(st.data())
def test_valuation_axioms(data):
    pl = named_place(data.draw(st.sampled_from(PLACE_NAMES)))
    x, y = data.draw(_elements(pl)), data.draw(_elements(pl))
    assert pl.valuation(x * y) == pl.valuation(x) + pl.valuation(y)
    s = x + y
    if not s.is_zero():
        vx, vy = pl.valuation(x), pl.valuation(y)
        assert pl.valuation(s) >= min(vx, vy)
        if vx != vy:
            assert pl.valuation(s) == min(vx, vy)


@given(st.data())
def test_two_valuation_routes_agree(data):
    pl = named_place(data.draw(st.sampled_from(PLACE_NAMES)))
    x = data.draw(_elements(pl))
    assert hensel_valuation(pl, x) == pl.valuation(x)


@given(st.data())
def test_residue_is_a_ring_map(data):
    pl = named_place(data.draw(st.sampled_from(PLACE_NAMES)))
    x, y = data.draw(_elements(pl)), data.draw(_elements(pl))
    if pl.valuation(x) < 0 or pl.valuation(y) < 0:
        return
    assert pl.residue(x + y) == pl.residue(x) + pl.residue(y)
    assert pl.residue(x * y) == pl.residue(x) * pl.residue(y)
    assert (pl.valuation(x) == 0) == (not pl.residue(x).is_zero())
