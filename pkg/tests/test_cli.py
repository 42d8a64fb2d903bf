import json
import shutil
import subprocess
import sys

import pytest

from ccx import verify
from ccx.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from ccx.fixtures import bundled_fixture


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, expected", [
    (["character", "2"], "x1^-1*x2 + x1^-1*x3"),
    (["character", "1"], "x1"),
    (["character", "T2+2"], "x1^-1*x2^2 + x1^-1*x2*x3"),
    (["character", "0"], "1"),
    (["character", "2", "--formula", "fu"], "x1^-1*x2 + x1^-1*x3"),
    (["character", "2", "--formula", "palu"], "x1"),
    (["character", "1", "--formula", "palu"], "2*x1^-1"),
    (["index", "2"], "-1*[T1] + 1*[T3]"),
    (["index", "2", "--op"], "-1*[T1] + 1*[T2]"),
    (["theta", "1"], "-1*[T2] + 1*[T3]"),
    (["theta", "2"], "0"),
    (["phi"], "Phi[S'1] = -1*[T2] + 1*[T3]"),
])
def test_text_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out.strip() == expected


def test_json_output(capsys):
    code, out, _ = run(capsys, "--format", "json", "phi")
    assert code == EXIT_OK
    assert json.loads(out) == {"phi": [[0], [-1], [1]], "summands": ["T1", "T2", "T3"]}
    code, out, _ = run(capsys, "--format", "json", "index", "2")
    assert json.loads(out)["coords"] == [-1, 0, 1]


def test_catalog(capsys):
    code, out, _ = run(capsys, "--format", "json", "catalog")
    entries = {e["name"]: e for e in json.loads(out)["catalog"]}
    assert code == EXIT_OK
    assert entries["T2"]["projective"] and not entries["2"]["in_T"]
    assert entries["T1"]["ext1"] == [0, 0, 0, 1]


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "character", "zz")[0] == EXIT_INPUT
    assert run(capsys, "--prime", "100", "phi")[0] == EXIT_INPUT
    assert run(capsys, "--fixture", str(tmp_path / "none"), "phi")[0] == EXIT_INPUT
    d = tmp_path / "bad"
    shutil.copytree(bundled_fixture(), d)
    (d / "catalog.json").write_text("{not json")
    code, _, err = run(capsys, "--fixture", str(d), "phi")
    assert code == EXIT_INPUT and "not valid JSON" in err
    with pytest.raises(SystemExit) as exc:
        main(["--primes", "2,4", "phi"])
    assert exc.value.code == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--multiplication", "--specialize")
    assert code == EXIT_OK
    assert "0 failed" in out and "FAIL" not in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    def broken(self):
        raise RuntimeError("forced")

    monkeypatch.setattr(verify.Suite, "multiplication", broken)
    code, out, _ = run(capsys, "verify", "--multiplication")
    assert code == EXIT_FAIL
    assert "[FAIL]" in out


def test_verify_all_is_deterministic():
    cmd = [sys.executable, "-m", "ccx", "--format", "json", "verify", "--all"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    report = json.loads(a)
    assert report["ok"] and report["failed"] == 0


def test_cross_prime(capsys):
    code, out, _ = run(capsys, "verify", "--specialize", "--cross-prime", "211")
    assert code == EXIT_OK
    assert "cross-check at prime 211: identical" in out
