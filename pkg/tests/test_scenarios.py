import json
from pathlib import Path

import pytest

from freepairs.errors import UndefinedCase
from freepairs.freeness import CERTIFIED, EXACT_PAIR, SUBGROUP_WITNESS
from freepairs.places import named_place
from freepairs.scenarios import (
    SCENARIOS,
    WEYL1_PRINTED_RESIDUES,
    WEYL1_RESIDUE_NAMES,
    ScenarioReport,
    emit_report,
    listing_W,
    printed_residue_table,
    run_heisenberg,
    run_scenario,
    run_weyl,
    weyl1_W,
    weyl1_residue_table,
)

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("sid", list(SCENARIOS))
def test_verdict_and_checks(reports, sid):
    r = reports[sid]
    assert r.verdict == SCENARIOS[sid].expected
    failed = [k for k, ok in r.checks.items() if not ok]
    assert failed == []
    if r.verdict == "CERTIFIED":
        assert r.certificate.verdict == CERTIFIED and r.certificate.strength == EXACT_PAIR
        assert r.word_sample.passed
    elif r.verdict == "PARTIAL":
        assert r.certificate.strength == SUBGROUP_WITNESS
        assert r.word_sample.passed and r.word_sample.count == 200 and r.word_sample.max_len == 8
    else:
        assert r.certificate is None and r.notes


@pytest.mark.parametrize("sid", list(SCENARIOS))
def test_json_round_trip(reports, sid):
    r = reports[sid]
    data = emit_report(r, "JSON")
    back = ScenarioReport.from_json(data)
    assert back == r
    assert emit_report(back, "JSON") == data


def test_reports_are_deterministic(reports):
    for sid in ("heis/sym/III/even", "heis/uni/II", "weyl/2"):
        assert emit_report(run_scenario(sid), "JSON") == emit_report(reports[sid], "JSON")


def test_seed_changes_only_the_sample(reports):
    other = run_scenario("heis/sym/II", seed=1)
    assert other.word_sample.seed == 1 and other.word_sample.passed
    assert other.certificate == reports["heis/sym/II"].certificate


def test_text_report(reports):
    text = emit_report(reports["heis/sym/I/odd-odd"], "TEXT").decode()
    assert "verdict: OPEN" in text and "note:" in text


def test_undefined_cases():
    with pytest.raises(UndefinedCase):
        run_scenario("heis/sym/V")
    with pytest.raises(UndefinedCase):
        run_heisenberg("V", 0, 0, "SYMMETRIC")
    with pytest.raises(UndefinedCase):
        run_heisenberg("I", 0, 0, "NEITHER")
    with pytest.raises(UndefinedCase):
        run_weyl(3)


def test_parity_routing():
    assert run_heisenberg("I", 2, -4, "symmetric").id == "heis/sym/I/even-even"
    assert run_heisenberg("I", 3, 1, "UNITARY").id == "heis/uni/I/odd-odd"
    assert run_heisenberg("I", 3, 2, "UNITARY").id == "heis/uni/I"


# -- the Weyl residue table ----------------------------------------------------------------------


def test_residues_match_golden(reports):
    golden = json.loads((GOLDEN / "weyl1_residues.json").read_text())
    assert list(golden) == list(WEYL1_RESIDUE_NAMES)
    assert reports["weyl/1"].values["residues"] == golden
    assert weyl1_residue_table() == golden


def test_displayed_table_comes_from_listing_matrix():
    listing = weyl1_residue_table(listing_W())
    printed = printed_residue_table()
    disagree = [k for k in WEYL1_RESIDUE_NAMES if listing[k] != printed[k]]
    assert disagree == ["u11"]
    pl = named_place("P(1+i^2)")
    corrected = WEYL1_PRINTED_RESIDUES["u11"].replace("2*b^2", "2*a*b^2")
    assert str(pl.parse_residue(corrected)) == listing["u11"]


def test_listing_matrix_differs_from_image_in_one_entry():
    W, Wl = weyl1_W(), listing_W()
    diff = [(i, j) for i in range(3) for j in range(3) if W[i, j] != Wl[i, j]]
    assert diff == [(2, 1)]


def test_weyl_values(reports):
    assert reports["weyl/1"].values["min poly of 1+i^2"]
    assert sorted(reports["weyl/2"].values["ν(U diagonal)"]) == [-1, 0, 1]
    assert reports["weyl/1"].certificate.eigen_valuations == (1, -1, 0)
