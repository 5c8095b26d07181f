import json
import os
import subprocess
import sys

import pytest

from covkit.cli import main
from covkit.fixtures import fixture_path

C2 = str(fixture_path("c2_sign"))


def run_main(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generators_example(capsys):
    code, out, _ = run_main(capsys, "generators", "--group", C2, "--cap", "2")
    assert code == 0
    assert "P1 (degree 1) = (x0)" in out and "certified" in out


def test_molien_example(capsys):
    code, out, _ = run_main(capsys, "molien", "--group", str(fixture_path("s2_trivial")), "--order", "6")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line.strip()[:1].isdigit()]
    assert [int(r[1]) for r in rows] == [1, 1, 2, 2, 3, 3, 4]


def test_molien_verify(capsys):
    code, out, _ = run_main(capsys, "molien", "--group", str(fixture_path("s3_sign")), "--order", "5", "--verify")
    assert code == 0 and "FAIL" not in out


def test_decompose_example(capsys):
    code, out, _ = run_main(capsys, "decompose", "--group", C2, "--poly", "x^5")
    assert code == 0
    assert "p1 = x0^4" in out and "verification: PASS" in out


def test_dist_decompose(capsys, tmp_path):
    d = tmp_path / "t.json"
    d.write_text(json.dumps({"n": 1, "d": 1, "terms": [{"location": ["0"], "multi_index": [1], "weight": ["1"]}]}))
    code, out, _ = run_main(capsys, "dist-decompose", "--group", C2, "--dist", str(d))
    assert code == 0 and "theta1 = -1/2*D^(2)delta(0)" in out and "reassembly: PASS" in out
    code, _, err = run_main(capsys, "dist-decompose", "--group", str(fixture_path("c2_trivial")), "--dist", str(d))
    assert code == 1 and "NotCovariant" in err


def test_error_reporting(capsys, tmp_path):
    code, _, err = run_main(capsys, "decompose", "--group", C2, "--poly", "x^2")
    assert code == 1 and err.startswith("error: NotCovariant")
    code, _, err = run_main(capsys, "molien", "--group", str(tmp_path / "missing.json"))
    assert code == 2 and "FileIO" in err
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    code, _, err = run_main(capsys, "close", "--group", str(bad))
    assert code == 2 and "ConfigParse" in err
    nonhom = tmp_path / "nonhom.json"
    nonhom.write_text(json.dumps({"n": 1, "d": 1, "source_generators": [[["-1"]]], "rho_generators": [[["2"]]]}))
    code, _, err = run_main(capsys, "check-rep", "--group", str(nonhom))
    assert code == 1 and "NotAHomomorphism" in err
    code, _, err = run_main(capsys, "generators", "--group", C2, "--cap", "0")
    assert code == 2 and "ConfigParse" in err
    with pytest.raises(SystemExit) as exc:
        main(["compactify-report", "--group", C2, "--function", "nope"])
    assert exc.value.code == 2


def test_out_writes_json_twin(capsys, tmp_path):
    out = tmp_path / "rep.txt"
    code, stdout, _ = run_main(capsys, "certify", "--group", C2, "--out", str(out))
    assert code == 0 and stdout == ""
    assert "certification: PASS" in out.read_text()
    twin = json.loads(out.with_suffix(".json").read_text())
    assert twin["passed"] is True


def test_json_flag(capsys):
    code, out, _ = run_main(capsys, "molien", "--group", C2, "--order", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert [row["invariant"] for row in data["table"]] == [1, 0, 1, 0]
    assert data["invariant"]["denominator"] == ["1", "0", "-1"]


@pytest.mark.parametrize("seed", ["1", "2"])
def test_cross_process_determinism(tmp_path, seed):
    cmd = [sys.executable, "-m", "covkit.cli", "generators", "--group", str(fixture_path("s3_sign"))]
    env = dict(os.environ, PYTHONHASHSEED=seed)
    a = subprocess.run(cmd, env=env, capture_output=True, check=True).stdout
    env["PYTHONHASHSEED"] = str(int(seed) + 40)
    b = subprocess.run(cmd, env=env, capture_output=True, check=True).stdout
    assert a == b and b"Vandermonde" not in b
