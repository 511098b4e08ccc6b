import json

from pytest import mark

from alpha_calc.cli import RunConfig, main, parse_surface_spec, run
from alpha_calc.cli.main import EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK
from tests.conftest import PAPER_L_INTERSECTIONS, PAPER_MATRIX

NEGATIVE_SPEC = """\
base: hirzebruch 1
divisor: L = -1 Z1
"""


def test_alpha_csv(capsys, monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    arguments = "alpha --spec paper.surf --divisor L --k 1..4 --format csv --expect-paper"
    status = main(arguments.split())
    assert status == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "k,alpha_k,m_star,achieved_by,matches_closed_form",
        "1,1/7,7,E1,true",
        "2,1/8,16,E1,true",
        "3,3/23,23,E1,true",
        "4,1/8,32,E1,true",
    ]


def test_alpha_json_is_deterministic(capsys):
    assert main(["alpha", "--k", "1..2", "--format", "json"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["alpha", "--k", "1..2", "--format", "json"]) == EXIT_OK
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report["scope"].startswith("alpha_k restricted to divisors supported on Zt2")
    assert [r["alpha_k"] for r in report["results"]] == ["1/7", "1/8"]
    assert report["matches_closed_form"] is None
    assert report["infimum"] == "1/8"


@mark.parametrize("k_range", ["0..3", "3..1", "x"])
def test_invalid_k_range(k_range):
    assert main(["alpha", "--k", k_range]) == EXIT_INVALID


def test_build_text_round_trip(capsys, model):
    assert main(["build"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "#    -2   1   1   1   1   1   0   0" in text
    parsed, divisors = parse_surface_spec(text)
    assert parsed == model
    assert set(divisors) == {"L"}


def test_build_json(capsys):
    assert main(["build", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["basis"] == ["Zt2", "Ft", "Et1", "Et2", "Et3", "Et4", "E1", "E2"]
    assert report["intersection_matrix"] == PAPER_MATRIX
    assert report["curves"]["Ft1"] == [0, 1, -1, 0, 0, 0, -2, 0]
    assert report["divisors"]["L"] == ["4", "1", "2", "2", "2", "2", "1", "1"]


def test_ample(capsys):
    assert main(["ample", "--format", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "pass"
    assert report["self_intersection"] == 22
    assert report["per_curve"] == PAPER_L_INTERSECTIONS


def test_ample_fails(capsys, tmp_path):
    spec = tmp_path / "negative.surf"
    spec.write_text(NEGATIVE_SPEC)
    assert main(["ample", "--spec", str(spec), "--curves", "Z1,F"]) == EXIT_CHECK_FAILED
    assert "verdict: fail" in capsys.readouterr().out


def test_verify_paper_certificates(capsys):
    status = main(["verify", "--k", "1..6", "--expect-paper", "--format", "csv"])
    assert status == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,equivalent,lct,alpha_k_bound,matches_closed_form"
    assert lines[2] == "2,true,1/16,1/8,true"


def test_verify_alpha_report(capsys, tmp_path):
    report = tmp_path / "alpha.json"
    assert main(["alpha", "--k", "1..3", "--format", "json", "--output", str(report)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert main(["verify", "--certificate", str(report), "--expect-paper"]) == EXIT_OK


def test_verify_wrong_certificate(tmp_path):
    certificate = tmp_path / "wrong.json"
    certificate.write_text(json.dumps({"k": 1, "witness": {"E1": "7"}}))
    assert main(["verify", "--certificate", str(certificate)]) == EXIT_CHECK_FAILED


def test_oracle(capsys):
    assert main(["oracle", "--k", "1..2", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "k,alpha_k,oracle_alpha_k,same_witness",
        "1,1/7,1/7,true",
        "2,1/8,1/8,true",
    ]
    assert main(["oracle", "--k", "4"]) == EXIT_INVALID


def test_invalid_inputs(tmp_path, monkeypatch):
    assert main(["build", "--spec", str(tmp_path / "missing.surf")]) == EXIT_INVALID
    broken = tmp_path / "broken.surf"
    broken.write_text("base: hirzebruch 2\nblowup: E through G\n")
    assert main(["build", "--spec", str(broken)]) == EXIT_INVALID
    assert main(["alpha", "--divisor", "M", "--k", "1"]) == EXIT_INVALID
    monkeypatch.setenv("ALPHACALC_THREADS", "many")
    assert main(["build"]) == EXIT_INVALID


def test_run_config(monkeypatch):
    monkeypatch.setenv("ALPHACALC_THREADS", "3")
    config = RunConfig(command="alpha", k_range="2..5")
    assert config.workers == 3
    assert list(config.ks) == [2, 3, 4, 5]
    assert RunConfig(command="alpha", k_range="7").k_range == (7, 7)
    assert run(RunConfig(command="oracle", k_range="1", output_format="text", workers=1)) == EXIT_OK
