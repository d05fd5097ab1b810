import json

import pytest

from crewcheck.cli import main

F_C = "(1+x^2+x^8+x^14+x^18)/x^21"
F_Y = "(1+x^2+x^8+x^14+x^18)/x^21 + 1/(x+1)"


@pytest.fixture
def run(tmp_path, capsys):
    def _run(*argv):
        code = main(["--cache-dir", str(tmp_path / "cache"), *argv])
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


def test_genus(run):
    code, out, _ = run("genus", F_C)
    assert code == 0 and out.strip() == "10"


def test_genus_json(run):
    code, out, _ = run("--json", "genus", F_Y)
    doc = json.loads(out)
    assert doc["genus"] == 11
    assert doc["ramification"] == {"x": 21, "1 + x": 1}


def test_slopes(run):
    code, out, _ = run("--json", "slopes", F_Y)
    assert code == 0
    assert json.loads(out)["slopes"] == {"0": 1, "3/7": 7, "1/2": 6, "4/7": 7, "1": 1}


def test_zeta_of_D(run):
    code, out, _ = run("zeta", "1/(x+1)", "--json")
    assert json.loads(out)["zeta"] == {"q": 2, "g": 0, "coeffs": ["1"]}


def test_count_uses_cache(run, tmp_path):
    code, out, _ = run("--json", "count", F_Y, "--n-max", "3")
    doc = json.loads(out)
    assert doc["counts"] == {"1": 4, "2": 8, "3": 16}
    files = list((tmp_path / "cache").glob("*.json"))
    assert len(files) == 1
    assert json.loads(files[0].read_text())["curve_id"] == doc["curve_id"]


def test_parse_error_exit_code(run):
    code, _, err = run("genus", "(1+x")
    assert code == 2 and "position 4" in err


def test_split_cover_exit_code(run):
    code, _, err = run("zeta", "x^2 + x + 1")
    assert code == 2 and "constant" in err


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_crew_check(run):
    code, out, _ = run("--json", "crew-check", F_C, "1/(x+1)", "--verify-product-to", "10")
    assert code == 0
    doc = json.loads(out)
    assert [r["lambda"] for r in doc["rows"] if not r["equal"]] == ["3/7", "1/2", "4/7"]
    assert doc["genus"] == {"C": 10, "D": 0, "Y": 11, "X": 21}


def test_crew_check_overlap(run):
    code, _, err = run("crew-check", F_C, "1/x")
    assert code == 2 and "overlap" in err


def test_reproduce_paper_fast_path(run):
    code, out, _ = run("reproduce-paper", "--verify-product-to", "0")
    assert code == 0
    assert out.strip().endswith("violations at 3/7, 1/2, 4/7; Crew slope-0 equality holds")


def test_reproduce_paper_json(run):
    code, out, _ = run("--json", "reproduce-paper", "--verify-product-to", "8")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["verified_product_to"] == 8
    assert doc["P_C"] == {"q": 2, "g": 10, "coeffs": ["1"] + ["0"] * 9 + ["-32"] + ["0"] * 9 + ["1024"]}


def test_reproduce_paper_reports_mismatch(run, monkeypatch):
    from crewcheck import counterexample
    monkeypatch.setattr(counterexample, "GENERA", {"C": 9, "D": 0, "Y": 11, "X": 21})
    code, out, _ = run("reproduce-paper", "--verify-product-to", "0")
    assert code == 1
    assert "[FAIL] genera" in out and "expected" in out and "computed" in out


def test_survey(run):
    code, out, _ = run("--json", "survey", "--samples", "10", "--seed", "1",
                       "--include-supersingular")
    doc = json.loads(out)
    assert code == 0
    assert doc["seed"] == 1 and "PCG64" in doc["generator"]
    assert sum(h["count"] for h in doc["histogram"]) == 11
    assert doc["supersingular"][-1] == {"index": 10, "numerator": "1 + x^2 + x^8 + x^14 + x^18"}


def test_survey_empty(run):
    code, out, _ = run("survey", "--samples", "0")
    assert code == 0 and "0 samples" in out
