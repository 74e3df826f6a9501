import json
from pathlib import Path

import pytest

from qect import cli

CIRCUITS = Path(__file__).resolve().parent.parent / "circuits"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_paths_text(capsys):
    code, out, _ = run(capsys, "paths", "perfect", "--degree", "2")
    assert code == 0
    assert "A_path = 1 + 12*m + 240*z*m + 6102*m^2" in out
    assert "B_path - A_path" in out


def test_paths_json_round_trips(capsys):
    from qect.poly import Polynomial

    code, out, _ = run(capsys, "paths", "perfect", "--degree", "2", "--out", "json")
    assert code == 0
    payload = json.loads(out)
    a = Polynomial.from_json(payload["A_path"])
    assert a.degree() <= 2
    assert payload["meta"]["n"] == 5 and payload["meta"]["include_idle"] is False


def test_sl(capsys):
    code, out, _ = run(capsys, "sl", "perfect")
    assert code == 0
    assert "A(z) = 1 + 15*z^4" in out and "distance = 3" in out


def test_trace_with_probabilities(capsys):
    code, out, _ = run(capsys, "trace", str(CIRCUITS / "pauli_noise.qc"), "--probs")
    assert code == 0
    assert "p_X = z" in out


def test_tensor_of_teleportation(capsys):
    code, out, _ = run(capsys, "tensor", str(CIRCUITS / "teleportation.qc"))
    assert code == 0
    assert out.strip() == "e^I_I + e^X_X + e^Z_Z + e^Y_Y"


def test_coset_on_builtin(capsys):
    code, out, _ = run(capsys, "coset", "surface3", "--logical", "X", "--degree", "1")
    assert code == 0 and out.strip()


def test_quick_checks_pass(capsys):
    code, out, _ = run(capsys, "check", "quick")
    assert code == 0
    assert "FAIL" not in out


def test_bad_circuit_exit_status(tmp_path, capsys):
    bad = tmp_path / "bad.qc"
    bad.write_text("input qubit q\ngate FOO q\n")
    code, _, err = run(capsys, "tensor", str(bad))
    assert code == 2
    assert "line 2" in err and "FOO" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "trace", "no-such-file.qc")
    assert code == 2 and "error" in err


def test_unknown_subcommand_exits():
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])
