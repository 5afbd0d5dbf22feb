"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``criterion N: PASS|FAIL`` line; the lines are repeated in
the terminal summary.  Criterion 1 cannot hold as stated (see the reason on
its marker) and is reported as FAIL.
"""

import random
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from freepairs.algebras import cyc_reg_rep, cyclic_field, parse_cyc
from freepairs.arith.ext import min_poly_of, quadratic_a, quadratic_b
from freepairs.arith.fields import GF3, QQ
from freepairs.arith.matrix import SqMatrix
from freepairs.arith.upoly import UniPoly
from freepairs.freeness import CERTIFIED, parse_matrix, verify_certificate
from freepairs.heisenberg import LAMBDA, REPRESENTATIVES, X, Y, classify_order2, lift_automorphism, mat_inv, mat_mul
from freepairs.places import named_place, norm_to_base
from freepairs.scenarios import WEYL1_RESIDUE_NAMES, printed_residue_table, weyl1_residue_table
from freepairs.weyl import WeylElem, weyl_to_cyclic

KI = cyclic_field(GF3)


@pytest.mark.xfail(
    strict=True,
    reason="the printed residue table belongs to a mistyped W whose (3,2) entry is (i+1)^2; "
    "for the image of sts-tst, whose entry is (i+2)^2, only 6 of the 20 printed residues hold",
)
def test_criterion_1_residue_table(record):
    computed = weyl1_residue_table()
    printed = printed_residue_table()
    agree = [k for k in WEYL1_RESIDUE_NAMES if computed[k] == printed[k]]
    ok = len(agree) == len(WEYL1_RESIDUE_NAMES)
    record(1, ok, f"{len(agree)} of {len(WEYL1_RESIDUE_NAMES)} printed residues equal the computed ones at P(1+i^2)")
    assert ok


def test_criterion_2_weyl_case_two(record):
    s, t = WeylElem.gens()
    one = parse_cyc("1")
    e1, e2 = weyl_to_cyclic(t * s + s * t), weyl_to_cyclic(t * t * s - s * t * t)
    U = cyc_reg_rep((one + e1) * (one - e1).inverse())
    V = cyc_reg_rep((one - e2) * (one + e2).inverse())
    shown_U = parse_matrix([["(i+1)^2*(i+2)", "0", "0"], ["0", "i^2*(i+1)", "0"], ["0", "0", "(i+2)^2*i"]], KI) * KI.parse("2/a")
    shown_V = parse_matrix([["1+2*b", "1", "2"], ["2*b", "1+2*b", "1"], ["b", "2*b", "1+2*b"]], KI) * KI.parse("1/(1+b)")
    shown_Vinv = parse_matrix([["2+2*b", "1", "1"], ["b", "2+2*b", "1"], ["b", "b", "2+2*b"]], KI) * KI.parse("1/(2+b)")
    pl = named_place("P(i)")
    diag = sorted(pl.valuation(x) for x in U.diagonal_entries())
    entries = [x for M in (V, V.inverse()) for row in M.rows for x in row]
    matches = U == shown_U and V == shown_V and V.inverse() == shown_Vinv
    units = len(entries) == 18 and all(pl.valuation(x) == 0 for x in entries)
    ok = matches and diag == [-1, 0, 1] and units
    record(2, ok, f"U, V, V^-1 equal the displayed matrices: {matches}; ν(U diagonal) sorted {diag}; 18 unit entries: {units}")
    assert ok


def test_criterion_3_min_poly(record):
    a = GF3.gen("a")
    h = min_poly_of(KI.parse("1+i^2"))
    expected = UniPoly([GF3.const(-1) - a * a, GF3.const(2), GF3.const(-2), GF3.one], GF3.zero, "t")
    ok = h == expected
    record(3, ok, f"min poly of 1+i^2 is {h}")
    assert ok


CERTIFIED_SCENARIOS = [
    "heis/sym/III/even", "heis/sym/III/odd", "heis/uni/III/even", "heis/uni/III/odd",
    "heis/uni/IV/even", "heis/uni/IV/odd", "heis/uni/I/odd-odd", "heis/uni/II",
    "heis/sym/I/even-odd", "heis/sym/I/odd-even", "weyl/1", "weyl/2",
]


def test_criterion_4_certificates(reports, record):
    problems = []
    for sid in CERTIFIED_SCENARIOS:
        cert = reports[sid].certificate
        if cert is None or cert.verdict != CERTIFIED:
            problems.append(f"{sid}: not certified")
            continue
        pl = named_place(cert.place)
        A = parse_matrix(cert.pair["A"], pl.descriptor)
        B = parse_matrix(cert.pair["B"], pl.descriptor)
        problems += [f"{sid}: {p}" for p in verify_certificate(cert, A, B, pl)]
    L, K = quadratic_a(QQ), quadratic_b(QQ)
    named = {
        "ν(α^2) = 2": named_place("P(alpha)").valuation(K.parse("(-1+b+j)^2")) == 2,
        "Norm(1+i) = 1-a": norm_to_base(L.parse("1+i")) == QQ.parse("1-a"),
        "Norm(μ) = 1+b+b^2": norm_to_base(K.parse("1+b+j")) == QQ.parse("1+b+b^2"),
        "Norm(α) = 1-3b+b^2": norm_to_base(K.parse("-1+b+j")) == QQ.parse("1-3*b+b^2"),
    }
    problems += [k for k, v in named.items() if not v]
    ok = not problems
    record(4, ok, f"{len(CERTIFIED_SCENARIOS)} certificates re-verified by the Hensel route, 4 named values; problems: {problems or 'none'}")
    assert ok


def test_criterion_5_partial_and_open(reports, record):
    partial = ["heis/sym/I/even-even", "heis/sym/II", "heis/sym/IV/even", "heis/sym/IV/odd"]
    open_ = ["heis/sym/I/odd-odd", "heis/uni/I"]
    bad = []
    for sid in partial:
        r = reports[sid]
        ws = r.word_sample
        if r.verdict != "PARTIAL" or not ws.passed or ws.max_len != 8 or ws.count != 200:
            bad.append(sid)
    bad += [sid for sid in open_ if reports[sid].verdict != "OPEN"]
    ok = not bad
    record(5, ok, f"PARTIAL with 200 passing words for {len(partial)} cases, OPEN for {len(open_)}; mismatches: {bad or 'none'}")
    assert ok


PROPERTY_TESTS = {
    "field and extension axioms": [
        "test_arith.py::test_ratfunc_field_axioms", "test_arith.py::test_ratfunc_axioms_gf3",
        "test_arith.py::test_ratfunc_inverse_and_canonical_form", "test_arith.py::test_ext_axioms",
        "test_arith.py::test_ext_inverse",
    ],
    "valuation axioms": ["test_places.py::test_valuation_axioms", "test_places.py::test_two_valuation_routes_agree"],
    "Heisenberg group and involutions": [
        "test_heisenberg.py::test_group_laws", "test_heisenberg.py::test_involution_laws",
        "test_heisenberg.py::test_involution_agrees_with_letterwise_expansion",
    ],
    "Weyl product against the operator action": ["test_weyl.py::test_product_matches_operator_action"],
    "ψ, φ, τφ homomorphisms": [
        "test_heisenberg.py::test_specialization_is_multiplicative", "test_weyl.py::test_phi_is_multiplicative",
        "test_weyl.py::test_tau_phi_is_multiplicative",
    ],
    "regular representations": [
        "test_algebras.py::test_quaternion_representations_are_multiplicative",
        "test_algebras.py::test_determinant_is_reduced_norm",
        "test_algebras.py::test_cyclic_representation_is_multiplicative",
    ],
}


def test_criterion_6_property_suites(outcomes, record):
    here = Path(__file__).parent
    wanted = [t for group in PROPERTY_TESTS.values() for t in group]
    seen = {t: o for t in wanted for nodeid, o in outcomes.items() if nodeid.endswith(t)}
    missing = [t for t in wanted if t not in seen]
    if missing:
        # run on its own: execute the property tests that did not run in this session
        proc = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *[str(here / t) for t in missing]],
            cwd=here.parent, capture_output=True, text=True,
        )
        for t in missing:
            seen[t] = "passed" if proc.returncode == 0 else "failed"
    failed = [t for t in wanted if seen[t] != "passed"]
    profile = settings.default
    ok = not failed and profile.max_examples >= 100 and profile.derandomize
    record(6, ok, f"{len(wanted)} property tests in {len(PROPERTY_TESTS)} groups, {profile.max_examples} cases each, fixed seed; failed: {failed or 'none'}")
    assert ok


def test_criterion_7_classification(record):
    rng = random.Random(0xF2EE)

    def random_gl2():
        T = (1, 0, 0, 1)
        for _ in range(rng.randint(1, 6)):
            k = rng.choice([-2, -1, 1, 2])
            T = mat_mul(T, rng.choice([(1, k, 0, 1), (1, 0, k, 1), (0, 1, 1, 0), (-1, 0, 0, 1)]))
        return T

    wrong = 0
    for name, rep in REPRESENTATIVES.items():
        wrong += classify_order2(rep)[0] != name
        for _ in range(100):
            T = random_gl2()
            A = mat_mul(mat_mul(T, rep), mat_inv(T))
            cls, C = classify_order2(A)
            wrong += cls != name or mat_mul(mat_mul(C, A), mat_inv(C)) != rep
    bad_lifts = 0
    for _ in range(100):
        A = random_gl2()
        f = lift_automorphism(A)
        bad_lifts += f.projection() != A or f(X) * f(Y) != f(LAMBDA) * f(Y) * f(X)
    ok = wrong == 0 and bad_lifts == 0
    record(7, ok, f"4 representatives and 400 conjugates: {wrong} misclassified; 100 lifts: {bad_lifts} invalid")
    assert ok


def test_criterion_8_involution_flags(reports, record):
    bad = []
    counted = 0
    for sid, r in reports.items():
        if r.verdict == "OPEN":
            continue
        counted += 1
        if r.mode == "SYMMETRIC":
            flags = [k for k in r.checks if "symmetric" in k or k.endswith("* = u") or "* = v^-1 u v" in k]
        else:
            flags = [k for k in r.checks if "times its star is 1" in k or k == "v v* = 1"]
        if len(flags) < 2 or not all(r.checks[k] for k in flags):
            bad.append(sid)
    ok = not bad and counted == 16
    record(8, ok, f"{counted} scenarios carry exact symmetric/unitary flags for both members; failing: {bad or 'none'}")
    assert ok


def test_criterion_9_runtime(reports, suite_seconds, record):
    ok = suite_seconds < 120 and len(reports) == 18
    record(9, ok, f"all 18 scenarios ran in {suite_seconds:.1f} s")
    assert ok
