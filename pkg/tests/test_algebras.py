from hypothesis import assume, given
from hypothesis import strategies as st
import pytest

from freepairs.algebras import (
    CycElem,
    cayley,
    cyc_inv,
    cyc_mul,
    cyc_reg_rep,
    cyclic_field,
    parse_cyc,
    parse_quat,
    quat_conj,
    quat_inv,
    quat_mul,
    quat_reg_rep,
)
from freepairs.arith.ext import quadratic_a
from freepairs.arith.fields import GF3, QQ
from freepairs.arith.matrix import SqMatrix
from freepairs.errors import NotInvertible
from freepairs.freeness import parse_matrix
from freepairs.weyl import WeylElem, weyl_to_cyclic

from strategies import cycs, nonzero_ratfuncs, quats

KI = cyclic_field(GF3)
L = quadratic_a(QQ)


def test_quaternion_relations():
    i, j = parse_quat("i"), parse_quat("j")
    assert (quat_mul(i, j) + quat_mul(j, i)).is_zero()
    assert i * i == parse_quat("a")
    assert quat_conj(parse_quat("1+2*i+3*j")) == parse_quat("1-2*i-3*j")


def test_quaternion_cayley_examples():
    assert parse_quat("(1-2*j)") * quat_inv(parse_quat("1+2*j")) == parse_quat("(1-2*j)^2/(1-4*b)")
    omega = "(b^2+b^-3)"
    lhs = cayley(parse_quat(f"{omega}*i*j"))
    assert lhs == parse_quat(f"(1-{omega}^2*a*b-2*{omega}*i*j)/(1+{omega}^2*a*b)")
    assert cayley(parse_quat("(1-1/b)*j")) == parse_quat("(b+(1-b)*j)^2/(-b+3*b^2-b^3)")
    assert cayley(parse_quat("0")) == parse_quat("1")


def test_quaternion_representations():
    assert quat_reg_rep(parse_quat("1+i"), "L") == SqMatrix.diagonal([L.parse("1+i"), L.parse("1-i")])
    one = parse_quat("1")
    assert quat_reg_rep(one, "L") == quat_reg_rep(one, "L").like_identity()
    assert quat_reg_rep(one, "K").is_diagonal()
    omega = "(b^2+b^-3)"
    B = quat_reg_rep(cayley(parse_quat(f"{omega}*i*j")), "L")
    c = f"(1-{omega}^2*a*b)/(1+{omega}^2*a*b)"
    expected = parse_matrix([[c, f"-2*{omega}*i/(1+{omega}^2*a*b)"], [f"2*{omega}*b*i/(1+{omega}^2*a*b)", c]], L)
    assert B == expected


@given(quats(), quats())
def test_quaternion_representations_are_multiplicative(x, y):
    for over in ("L", "K"):
        assert quat_reg_rep(x * y, over) == quat_reg_rep(x, over) * quat_reg_rep(y, over)


@given(quats())
def test_determinant_is_reduced_norm(x):
    for over in ("L", "K"):
        assert quat_reg_rep(x, over).det().scalar() == x.norm()


@given(quats(), quats(), quats())
def test_quaternion_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(quats())
def test_quaternion_inverse(x):
    assume(not x.is_zero())
    assert x * quat_inv(x) == parse_quat("1")


# -- cyclic algebra ------------------------------------------------------------------------------


def test_cyclic_relations():
    i, j = CycElem.gens(KI)
    assert cyc_mul(i, j) == j * (i + 1)
    assert j * i == (i + 2) * j
    assert j**3 == parse_cyc("b")
    assert i**3 - i == parse_cyc("a")


def test_cyclic_examples():
    assert parse_cyc("1+2*j") * cyc_inv(parse_cyc("1+j")) == parse_cyc("(1+2*b+j+2*j^2)/(1+b)")
    assert parse_cyc("2*(1+i)") * cyc_inv(parse_cyc("-2*i")) == parse_cyc("2/a*(i+1)^2*(i+2)")
    with pytest.raises(NotInvertible):
        cayley(parse_cyc("-1"))


def test_cyclic_displayed_matrices():
    s, t = WeylElem.gens()
    W = cyc_reg_rep(weyl_to_cyclic(s * t * s - t * s * t))
    assert W == parse_matrix([["0", "2*i", "(i+1)^2/b"], ["i^2", "0", "2*i+1"], ["2*b*(i+1)", "(i+2)^2", "0"]], KI)
    U = cyc_reg_rep(parse_cyc("(1+i^2)/(1+(i+1)^2)"))
    assert U == parse_matrix([["(1+i^2)/(1+(i+1)^2)", "0", "0"], ["0", "(1+(i+2)^2)/(1+i^2)", "0"],
                              ["0", "0", "(1+(i+1)^2)/(1+(i+2)^2)"]], KI)
    V = cyc_reg_rep(parse_cyc("(1+2*b+j+2*j^2)/(1+b)"))
    assert V == parse_matrix([["(1+2*b)/(1+b)", "1/(1+b)", "2/(1+b)"], ["2*b/(1+b)", "(1+2*b)/(1+b)", "1/(1+b)"],
                              ["b/(1+b)", "2*b/(1+b)", "(1+2*b)/(1+b)"]], KI)


@given(cycs(), cycs())
def test_cyclic_representation_is_multiplicative(x, y):
    assert cyc_reg_rep(x * y) == cyc_reg_rep(x) * cyc_reg_rep(y)


@given(cycs(), cycs(), cycs())
def test_cyclic_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(cycs(), nonzero_ratfuncs(GF3))
def test_cyclic_centre(x, f):
    a, b = parse_cyc("a"), parse_cyc("b")
    assert a * x == x * a and b * x == x * b
    assert f * x == x * f


@given(cycs())
def test_cyclic_inverse(x):
    assume(not cyc_reg_rep(x).det().is_zero())
    assert x * cyc_inv(x) == parse_cyc("1") == cyc_inv(x) * x
