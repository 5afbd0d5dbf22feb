import json
import random

from hypothesis import given
from hypothesis import strategies as st

from freepairs.algebras import cayley, parse_quat, quat_reg_rep
from freepairs.arith.ext import quadratic_a, quadratic_b
from freepairs.arith.fields import QQ
from freepairs.arith.matrix import SqMatrix
from freepairs.freeness import (
    CERTIFIED,
    FAILED,
    INAPPLICABLE,
    SUBGROUP_WITNESS,
    FreenessCertificate,
    WordSampleReport,
    certify,
    parse_matrix,
    random_reduced_word,
    sample_words,
    verify_certificate,
)
from freepairs.places import named_place

L = quadratic_a(QQ)
K = quadratic_b(QQ)
OMEGA = "(b^2+b^-3)"


def _sym_iii_even():
    A = parse_matrix([["1+i", "0"], ["0", "-1+i"]], L)
    B = quat_reg_rep(cayley(parse_quat(f"{OMEGA}*i*j")), "L")
    return A, B


def test_certified_pair():
    A, B = _sym_iii_even()
    pl = named_place("P(1+i)")
    cert = certify(A, B, pl)
    assert cert.verdict == CERTIFIED
    assert cert.eigen_valuations == (1, 0)
    assert verify_certificate(cert, A, B, pl) == []


def test_identity_has_no_unique_extreme():
    A = SqMatrix.identity(2, L.one)
    _, B = _sym_iii_even()
    cert = certify(A, B, named_place("P(1+i)"))
    assert cert.verdict == FAILED
    assert "unique" in cert.reason


def test_squared_unitary_pair():
    A2 = parse_matrix([["(1+b+j)^2", "0"], ["0", "(1+b-j)^2"]], K)
    B2 = parse_matrix([["1+a-a*b", "-2*(1+j)"], ["2*a*(-1+j)", "1+a-a*b"]], K)
    pl = named_place("P(mu)")
    cert = certify(A2, B2, pl)
    assert cert.verdict == CERTIFIED
    assert cert.eigen_valuations == (2, 0)
    assert all(v == 0 for row in cert.B_valuations + cert.Binv_valuations for v in row)
    assert verify_certificate(cert, A2, B2, pl) == []


def test_inapplicable_and_singular():
    A, B = _sym_iii_even()
    pl = named_place("P(1+i)")
    assert certify(B, A, pl).verdict == INAPPLICABLE
    singular = parse_matrix([["1", "i"], ["i", "a"]], L)
    assert certify(A, singular, pl).verdict == FAILED


def test_tampered_certificate_is_caught():
    A, B = _sym_iii_even()
    pl = named_place("P(1+i)")
    data = certify(A, B, pl).to_json()
    data["eigen_valuations"] = [0, 1]
    problems = verify_certificate(FreenessCertificate.from_json(data), A, B, pl)
    assert problems and "eigen" in problems[0]


def test_certificate_json_round_trip():
    A, B = _sym_iii_even()
    cert = certify(A, B, named_place("P(1+i)"), SUBGROUP_WITNESS)
    text = json.dumps(cert.to_json(), sort_keys=True)
    back = FreenessCertificate.from_json(text)
    assert back == cert
    assert back.strength == SUBGROUP_WITNESS
    assert json.dumps(back.to_json(), sort_keys=True) == text


scalars = st.tuples(st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2), st.integers(-1, 2)).filter(lambda t: t[0] or t[1])


@given(scalars)
def test_scaling_invariance(params):
    A, B = _sym_iii_even()
    pl = named_place("P(1+i)")
    c0, c1, k, _ = params
    c = L.element([QQ.const(c0) + QQ.gen("b"), QQ.const(c1)]) * pl.uniformizer**k
    base = certify(A, B, pl)
    scaled = certify(A * c, B, pl)
    shift = pl.valuation(c)
    assert scaled.eigen_valuations == tuple(v + shift for v in base.eigen_valuations)
    assert scaled.verdict == base.verdict
    unit = c * pl.uniformizer ** (-shift)
    assert certify(A, B * unit, pl).B_valuations == base.B_valuations
    assert certify(A, B * unit, pl).verdict == CERTIFIED


# -- word sampling -------------------------------------------------------------------------------


def test_reduced_words():
    rng = random.Random(3)
    lengths = set()
    for _ in range(500):
        w = random_reduced_word(rng, 8)
        lengths.add(len(w))
        assert all(f"{x}{y}" not in ("gG", "Gg", "hH", "Hh") for x, y in zip(w, w[1:]))
    assert lengths == set(range(1, 9))


def test_equal_generators_fail():
    A, _ = _sym_iii_even()
    report = sample_words(A, A, count=50, seed=1)
    assert not report.passed
    assert report.failures


def test_commuting_pair_fails():
    g = parse_matrix([["2", "0"], ["0", "1"]], L)
    h = parse_matrix([["1", "0"], ["0", "2"]], L)
    report = sample_words(g, h, count=200, seed=5)
    assert not report.passed


def test_certified_pair_passes_sampling():
    A, B = _sym_iii_even()
    report = sample_words(A, B.inverse() * A * B, max_len=8, count=200, seed=0xF2EE)
    assert report.passed
    assert report.count == 200 and report.max_len == 8


def test_word_report_round_trip():
    g = parse_matrix([["2", "0"], ["0", "1"]], L)
    h = parse_matrix([["1", "0"], ["0", "2"]], L)
    report = sample_words(g, h, count=40, seed=9, label="diag")
    assert WordSampleReport.from_json(json.loads(json.dumps(report.to_json()))) == report
    assert sample_words(g, h, count=40, seed=9, label="diag") == report
