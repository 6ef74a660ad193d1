import json
import subprocess
import sys

import pytest

from wittsig.cli import cli_dispatch as main
from wittsig.harness import corpus_paths


def path(name):
    return str(next(p for p in corpus_paths() if p.stem == name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ih(capsys):
    code, out, err = run(capsys, "ih", path("suspension_torus"), "--perversity", "upper")
    assert code == 0
    assert json.loads(out)["ranks"] == [1, 0, 2, 1]
    assert "IH ranks" in err
    code, out, _ = run(capsys, "ih", path("octahedron"), "--degree", "2")
    assert json.loads(out)["rank"] == 1


def test_witt_and_sign(capsys):
    code, out, _ = run(capsys, "witt", path("suspension_torus"))
    assert code == 0 and json.loads(out)["is_witt"] is False
    code, out, _ = run(capsys, "sign", path("octahedron"))
    assert code == 0 and json.loads(out)["signature"] == 0


def test_sign_on_non_witt_space_is_a_math_failure(capsys):
    code, out, err = run(capsys, "sign", path("suspension_torus"))
    assert code == 1 and out == "" and "failure" in err


def test_gsign_and_formula(capsys):
    _, out, _ = run(capsys, "gsign", path("torus7_order3"))
    g = json.loads(out)
    _, out, _ = run(capsys, "formula", path("torus7_order3"))
    f = json.loads(out)
    assert g["sign_g"]["float"] == pytest.approx(f["formula"]["float"])
    assert g["sign_g"]["float"][1] == pytest.approx(-(3**0.5))


def test_crosscheck_single(capsys):
    code, out, err = run(capsys, "crosscheck", path("octahedron_rotation"))
    assert code == 0 and json.loads(out)["pass"]


def test_crosscheck_failure_exit_code(capsys, tmp_path):
    doc = json.loads(open(path("torus7_order3")).read())
    doc["fixed_data"]["components"][0]["normal"][0]["conjugate"] = False
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, out, err = run(capsys, "crosscheck", str(f))
    assert code == 1 and "FAIL" in err


def test_identity_check(capsys):
    code, out, _ = run(capsys, "identity-check", "--max-rank", "2", "--trials", "3", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["checks"] == 2 * 3 * 5 and rep["pass"]


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "ih", str(tmp_path / "missing.json"))
    assert code == 2 and "input error" in err
    with pytest.raises(SystemExit) as exc:
        main(["ih", path("octahedron"), "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "gsign", path("octahedron"))
    assert code == 2 and "no action" in err


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("WITTSIG_PRECISION", "abc")
    code, _, err = run(capsys, "formula", path("s2_rotation_formula"))
    assert code == 2
    monkeypatch.setenv("WITTSIG_PRECISION", "512")
    code, out, _ = run(capsys, "formula", path("s2_rotation_formula"))
    assert code == 0 and json.loads(out)["formula"]["float"] == [0.0, 0.0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wittsig", "witt", path("suspension_s4")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_witt"] is True


def test_identity_check_rejects_bad_ranges(capsys):
    code, _, err = run(capsys, "identity-check", "--max-rank", "0")
    assert code == 2 and "max_rank" in err
