import json

from freepairs.cli import main


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 18
    assert out[0].startswith("heis/sym/I/even-even")


def test_classify(capsys):
    assert main(["classify", "--matrix", "0,-1,-1,0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["class"] == "S"


def test_classify_rejects_non_involution(capsys):
    assert main(["classify", "--matrix", "1,1,0,1"]) == 2
    assert "NOT_ORDER_TWO" in capsys.readouterr().err


def test_run_heis_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["run", "heis", "--type", "III", "--m", "0", "--mode", "symmetric", "--json", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "CERTIFIED" and data["id"] == "heis/sym/III/even"
    assert "verdict: CERTIFIED" in capsys.readouterr().out


def test_run_weyl_to_stdout(capsys):
    assert main(["run", "weyl", "--case", "2", "--json", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "CERTIFIED"


def test_run_open_case_is_expected(capsys):
    assert main(["run", "scenario", "heis/uni/I", "--quiet"]) == 0
    assert capsys.readouterr().out.strip() == "heis/uni/I: OPEN"


def test_undefined_scenario(capsys):
    assert main(["run", "scenario", "weyl/9"]) == 2
    assert "UNDEFINED_CASE" in capsys.readouterr().err


def test_certify(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    place = tmp_path / "place.json"
    pair.write_text(json.dumps({"A": [["(1+b+j)^2", "0"], ["0", "(1+b-j)^2"]],
                                "B": [["1+a-a*b", "-2*(1+j)"], ["2*a*(-1+j)", "1+a-a*b"]]}))
    place.write_text(json.dumps({"named": "P(mu)"}))
    assert main(["certify", "--input", str(pair), "--place", str(place)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "CERTIFIED" and data["independent_check"] == []
    assert data["eigen_valuations"] == [2, 0]


def test_certify_with_explicit_place(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    place = tmp_path / "place.json"
    pair.write_text(json.dumps({"A": [["1", "0"], ["0", "1"]], "B": [["1", "0"], ["0", "1"]]}))
    place.write_text(json.dumps({"minpoly": "i^2-a", "base_var": "a", "base_prime": "1-a",
                                 "gen_image": "-1", "uniformizer": "1+i"}))
    assert main(["certify", "--input", str(pair), "--place", str(place)]) == 1
    assert json.loads(capsys.readouterr().out)["verdict"] == "FAILED"


def test_missing_file(capsys):
    assert main(["certify", "--input", "/nonexistent.json", "--place", "/nonexistent.json"]) == 2
