import json

import pytest

from transversal_injection.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_layout(capsys):
    code, out, _ = run(capsys, "layout", "--distance", "2")
    assert code == 0
    assert json.loads(out)["z_stabs"] == [[0, 2, 3], [1, 2, 4]]


def test_coset(capsys):
    code, out, _ = run(capsys, "coset", "--distance", "2", "--z-outcomes", "01")
    assert code == 0
    assert sorted(json.loads(out)["strings"]) == sorted(
        ["00001", "01000", "10100", "11101", "10011", "11010", "00110", "01111"]
    )


def test_coset_guard(capsys):
    assert run(capsys, "coset", "--distance", "4", "--z-outcomes", "0" * 12)[0] == 2


def test_state_eq5(capsys):
    code, out, _ = run(capsys, "state", "--distance", "2", "--trajectory", "1001",
                       "--theta", "1.0471975512", "--phi", "0")
    assert code == 0
    doc = json.loads(out)
    sign = 1 if doc["A_coeffs"][1] > 0 else -1
    assert [sign * c for c in doc["A_coeffs"]] == [0, 1, 1, -1, -1, 0]
    assert [sign * c for c in doc["B_coeffs"]] == [0, -1, 1, 1, -1, 0]
    assert doc["bloch"][1] == pytest.approx(0, abs=1e-12)
    assert doc["frame"] == {"rep0": "00001", "rep1": "10011"}


def test_state_raw_amplitudes(capsys):
    code, out, _ = run(capsys, "state", "--distance", "2", "--trajectory", "0000",
                       "--alpha-re", "0.6", "--beta-im", "0.8", "--engine", "expansion")
    assert code == 0
    assert json.loads(out)["probability"] > 0


@pytest.mark.parametrize("argv", [
    ["state", "--distance", "2", "--trajectory", "10010"],
    ["state", "--distance", "2", "--trajectory", "10a1"],
    ["state", "--distance", "2", "--trajectory", "1001", "--alpha-re", "1", "--beta-re", "1"],
    ["state", "--distance", "2", "--trajectory", "1001", "--theta", "1", "--alpha-re", "1"],
    ["state", "--distance", "2", "--trajectory", "1001", "--bogus"],
    ["layout", "--distance", "1"],
    ["state", "--distance", "5", "--trajectory", "0" * 40, "--engine", "expansion"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2
    out, err = capsys.readouterr()
    assert out == "" and err


def test_strict_zero_probability(capsys):
    argv = ["state", "--distance", "2", "--trajectory", "1001", "--theta", "0"]
    assert run(capsys, *argv)[0] == 0
    code, out, err = run(capsys, *argv, "--strict")
    assert code == 1 and "ZeroProbabilityTrajectory" in err


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--distance", "2", "--trajectories", "all",
                       "--chis", "random:20", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] and doc["max_deviation"] < 1e-9 and len(doc["trajectories"]) == 16


def test_enumerate_deterministic(capsys, tmp_path, monkeypatch):
    outs = []
    for workers in ("1", "2"):
        path = tmp_path / f"cat{workers}.csv"
        code, out, _ = run(capsys, "enumerate", "--distance", "2", "--all", "--theta", "0.7",
                           "--phi", "0.2", "--format", "csv", "--out", str(path), "--workers", workers)
        assert code == 0
        assert json.loads(out)["entries"] == 16
        outs.append(path.read_bytes())
    monkeypatch.setenv("TI_WORKERS", "2")
    code, out, _ = run(capsys, "enumerate", "--distance", "2", "--all", "--theta", "0.7",
                       "--phi", "0.2", "--format", "csv")
    assert out.encode() == outs[0] == outs[1]


def test_enumerate_needs_chi(capsys):
    assert run(capsys, "enumerate", "--distance", "2")[0] == 2
