import json

import pytest

from modelspace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--single", "-n", "5")
    assert code == 0
    assert len(out.splitlines()) == 6
    code, out, _ = run(capsys, "enumerate", "--two", "-n", "3", "--sign", "opp")
    assert len(out.splitlines()) == 24
    assert out.startswith("S:n=3;eps=+-;pairs=")


def test_enumerate_usage_errors(capsys):
    code, _, err = run(capsys, "enumerate", "--two", "-n", "6", "--sign", "same")
    assert code == 2
    assert "error" in err
    assert run(capsys, "enumerate", "--two", "-n", "3")[0] == 2
    assert run(capsys, "enumerate", "--single", "-n", "3", "--sign", "opp")[0] == 2
    assert run(capsys, "enumerate", "--single", "-n", "4")[0] == 2


def test_homology_text_and_pd(capsys):
    code, out, _ = run(capsys, "homology", "M:n=5;pi=0:3,2:5,4:1", "--pd")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "H0=Z H1=0 H2=0 H3=0 H4=Z H5=Z"
    assert lines[1] == "PD: incompatible (betti_1 = 0 != betti_4 = 1)"


def test_homology_json(capsys):
    code, out, _ = run(capsys, "homology", "M:n=3;pi=0:3,2:1", "--format", "json", "--torsion-pd")
    assert code == 0
    first = out.splitlines()[0]
    assert json.loads(first) == [{"betti": [1, 0, 0, 1], "torsion": [[], [], [], []]}]
    assert "PD: compatible" in out


def test_bad_descriptor_exit_code(capsys):
    assert run(capsys, "homology", "nonsense")[0] == 2
    assert run(capsys, "build", "S:n=3;eps=+;pairs=(0,0)-(0,2);(0,1)-(0,3)")[0] == 2


def test_build_dump(capsys):
    code, out, _ = run(capsys, "build", "M:n=3;pi=0:3,2:1")
    data = json.loads(out)
    assert data["cells"][2] == ["0:[0,1,2]", "0:[0,1,3]"]


def test_pi1(capsys):
    code, out, _ = run(capsys, "pi1", "M:n=3;pi=0:3,2:1")
    assert code == 0
    assert "pi1 = 1 (trivial)" in out


def test_survey_formats(capsys, tmp_path):
    code, md, _ = run(capsys, "survey", "--single", "-n", "5")
    assert code == 0 and len(md.splitlines()) == 8
    store = str(tmp_path / "s.jsonl")
    code, csv1, _ = run(capsys, "survey", "--two", "-n", "3", "--sign", "same", "--format", "csv", "--store", store)
    code, csv2, _ = run(capsys, "survey", "--two", "-n", "3", "--sign", "same", "--format", "csv", "--store", store)
    assert csv1 == csv2
    code, js, _ = run(capsys, "survey", "--two", "-n", "3", "--sign", "opp", "--format", "json")
    assert len(json.loads(js)["rows"]) == 24


def test_verify_claims(capsys):
    code, out, _ = run(capsys, "verify", "h1-membership")
    assert code == 0 and "PASS (48/48)" in out
    code, out, _ = run(capsys, "verify", "pi1-trivial", "-n", "5", "--format", "json")
    assert code == 0 and json.loads(out)["universe"] == 6
    code, out, _ = run(capsys, "verify", "front-face", "M:n=5;pi=0:3,2:5,4:1")
    assert code == 0 and "k=3" in out
    assert run(capsys, "verify", "front-face")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    import modelspace.cli as cli
    from modelspace.survey import ClaimReport

    monkeypatch.setattr(cli, "verify_h2_rank_zero", lambda records: ClaimReport("h2-rank", 1, 0, ["x"]))
    code, out, _ = run(capsys, "verify", "h2-rank", "-n", "4")
    assert code == 1
    assert "FAIL" in out


def test_verify_suspension_and_h2(capsys):
    code, out, _ = run(capsys, "verify", "suspension-shift", "M:n=3;pi=0:3,2:1", "-k", "1")
    assert code == 0
    code, out, _ = run(capsys, "verify", "h2-rank", "-n", "4")
    assert code == 0 and "PASS (120/120)" in out


def test_suspend(capsys):
    code, out, _ = run(capsys, "suspend", "M:n=5;pi=0:3,2:5,4:1", "-k", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "M:n=7;pi=0:3,2:5,4:1,6:7"
    assert lines[1] == "H0=Z H1=0 H2=0 H3=0 H4=0 H5=0 H6=Z H7=Z"
    assert lines[2].startswith("shift check: PASS")


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "dim3-exotic")
    assert out.strip() == "M:n=3;pi=0:3,2:1"
    code, out, _ = run(capsys, "catalog")
    assert "s1xs-even-6" in out
    assert run(capsys, "catalog", "bogus")[0] == 2


def test_missing_command():
    with pytest.raises(SystemExit):
        main([])
