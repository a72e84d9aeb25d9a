from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cyclocert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "6")
    assert code == 0
    assert out.splitlines() == ["q^2 - q + 1", '["1","-1","1"]']


def test_qint_qbinom_quotgen(capsys):
    assert run(capsys, "qint", "3")[1].splitlines()[0] == "q^2 + q + 1"
    assert run(capsys, "qbinom", "4", "2")[1].splitlines()[1] == '["1","1","2","1","1"]'
    assert run(capsys, "quotgen", "6", "2")[1].splitlines()[0] == "q^3 + 1"
    assert run(capsys, "quotgen", "6", "4")[0] == 2
    assert run(capsys, "qbinom", "3", "5")[0] == 2
    assert run(capsys, "phi", "0")[0] == 2


def test_cert_and_verify(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "cert", "squarefree", "6", "-o", str(path))
    assert code == 0 and "2 generators, verified" in out
    assert run(capsys, "verify", str(path))[0] == 0
    code, out, _ = run(capsys, "cert", "qbinom", "2", "-o", str(path))
    assert code == 0 and "1 generator, verified" in out


def test_cert_rejects_non_squarefree(capsys, tmp_path):
    code, _, err = run(capsys, "cert", "squarefree", "12", "-o", str(tmp_path / "x.json"))
    assert code == 2 and "12 is not squarefree" in err
    assert run(capsys, "cert", "qbinom", "1", "-o", str(tmp_path / "x.json"))[0] == 2


def test_verify_mutations(capsys, tmp_path):
    path = tmp_path / "c.json"
    run(capsys, "cert", "qbinom", "10", "-o", str(path))
    text = path.read_text()
    payload = json.loads(text)

    bad = dict(payload)
    bad["cofactors"] = [list(c) for c in payload["cofactors"]]
    bad["cofactors"][-1][0] = str(int(bad["cofactors"][-1][0]) + 7)
    (tmp_path / "perturbed.json").write_text(json.dumps(bad))
    code, out, _ = run(capsys, "verify", str(tmp_path / "perturbed.json"))
    assert code == 1 and "bezout identity" in out

    swapped = dict(payload, target=["1", "1"])
    (tmp_path / "swapped.json").write_text(json.dumps(swapped))
    assert run(capsys, "verify", str(tmp_path / "swapped.json"))[0] == 1

    (tmp_path / "trunc.json").write_text(text[: len(text) // 2])
    assert run(capsys, "verify", str(tmp_path / "trunc.json"))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_verify_witness_file(capsys, tmp_path):
    from cyclocert import certjson
    from cyclocert.certengine import unit_certificate
    from cyclocert.polycore import Q, IntPoly

    path = tmp_path / "w.json"
    path.write_text(certjson.dumps(unit_certificate([IntPoly.constant(2), Q])))
    assert run(capsys, "verify", str(path))[0] == 0


def test_check_kinds(capsys):
    for argv in (["gcdmodp", "12", "5"], ["nagell", "6", "3"], ["charp", "3", "2", "2"], ["coprime", "3", "5", "2"], ["multprofile", "4", "2"], ["qm1", "3", "6", "2"]):
        code, out, _ = run(capsys, "check", *argv)
        assert code == 0 and out.startswith("PASS"), argv
    code, out, _ = run(capsys, "check", "gcdmodp", "6", "5", "--mode", "squarefree")
    assert code == 0
    assert run(capsys, "check", "gcdmodp", "12", "5", "--mode", "squarefree")[0] == 2
    assert run(capsys, "check", "coprime", "3", "3", "2")[0] == 2
    assert run(capsys, "check", "nagell", "6")[0] == 2
    assert run(capsys, "check", "bogus", "1")[0] == 2


def test_check_qm1_grid_flags_psi(capsys):
    code, out, _ = run(capsys, "check", "qm1", "--json")
    assert code == 0
    first, details = out.splitlines()
    assert "psi" in first and "differs" in first
    assert json.loads(details)["psi_reading_differs"] > 0


def test_check_json_is_deterministic(capsys):
    a = run(capsys, "check", "multprofile", "12", "5", "--json")[1]
    b = run(capsys, "check", "multprofile", "12", "5", "--json")[1]
    assert a == b
    assert json.loads(a.splitlines()[1])["min"] == {"1": 0, "2": 0, "3": 0, "4": 0, "6": 0, "12": 1}


def test_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--mode", "squarefree", "--max-n", "30", "--out", str(tmp_path), "--jobs", "2")
    assert code == 0
    rows = (tmp_path / "summary.tsv").read_text().splitlines()
    assert rows[0].split("\t") == ["n", "generators", "indices", "wall_seconds", "verified"]
    assert [int(r.split("\t")[0]) for r in rows[1:]] == [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30]
    assert all(r.endswith("yes") for r in rows[1:])
    assert run(capsys, "sweep", "--mode", "qbinom", "--max-n", "1", "--out", str(tmp_path))[0] == 2


def test_seed_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CYCLOCERT_SEED", "7")
    path = tmp_path / "c.json"
    assert run(capsys, "cert", "qbinom", "12", "-o", str(path))[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cyclocert", "phi", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("q^2 + q + 1")


@pytest.mark.parametrize("argv", [[], ["phi"], ["cert", "nope", "3"]])
def test_argparse_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
