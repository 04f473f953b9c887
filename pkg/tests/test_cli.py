import json

import pytest

from surface_cert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_cyclic(capsys):
    code, out, _ = run(capsys, "verify", "--genus", "1", "--euler", "7", "--route", "cyclic", "--prime", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "pass" and doc["certified"]
    assert doc["seeds"]["seed"] == 0xC0FFEE


def test_verify_cyclic_rejects_five(capsys):
    code, _, err = run(capsys, "verify", "--euler", "10", "--route", "cyclic", "--prime", "5")
    assert code == 2 and "[4]" in err


def test_verify_heisenberg(capsys, tmp_path):
    out = tmp_path / "cert.json"
    code, _, _ = run(capsys, "verify", "--genus", "1", "--euler", "1", "--route", "heisenberg",
                     "--target", "M22", "--prime", "2", "--output", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["conditional"] and not doc["certified"]


def test_verify_failure_exit(capsys):
    code, _, _ = run(capsys, "verify", "--euler", "1", "--route", "heisenberg", "--target", "he3_2",
                     "--prime", "2")
    assert code == 2


def test_verify_twist_spin(capsys):
    code, out, _ = run(capsys, "verify", "--route", "twist-spin", "--knot", "trefoil", "-d", "2", "-m", "1",
                       "--format", "text")
    assert code == 0 and "n = d^2 m = 4" in out


def test_inconclusive_exit(capsys):
    code, _, _ = run(capsys, "verify", "--route", "twist-spin", "--knot", "unknot", "-d", "2",
                     "--coset-budget", "1")
    assert code in (2, 3)


@pytest.mark.parametrize("argv", [
    [],
    ["verify"],
    ["verify", "--route", "cyclic"],
    ["verify", "--route", "heisenberg", "--euler", "1", "--prime", "2"],
    ["verify", "--route", "twist-spin"],
    ["verify", "--route", "twist-spin", "--knot", "nope", "-d", "2"],
    ["homology"],
    ["homology", "--group", "nonsense"],
    ["table", "--group", "Nobody"],
    ["verify", "--route", "cyclic", "--euler", "7", "--prime", "7", "--coset-budget", "0"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 64


def test_homology_commands(capsys):
    code, out, _ = run(capsys, "homology", "--cyclic", "5", "--degree", "3", "--format", "text")
    assert code == 0 and "Z/5" in out
    code, out, _ = run(capsys, "homology", "--group", "he3_2", "--degree", "3", "--method", "bar")
    doc = json.loads(out)
    assert all(8 % d == 0 for d in doc["structure"]["invariant_factors"])
    code, out, _ = run(capsys, "homology", "--psl2", "7", "--p-torsion-degrees", "--max", "12")
    assert json.loads(out)["p_torsion_degrees"] == [6, 12]


def test_homology_size_cap(capsys):
    code, _, err = run(capsys, "homology", "--group", "psl2_7", "--degree", "3")
    assert code == 65 and "size cap" in err


def test_table_commands(capsys):
    code, out, _ = run(capsys, "table", "--group", "Monster", "--format", "text")
    assert code == 0 and "external-only" in out and "not known" in out
    code, out, _ = run(capsys, "table", "--group", "M11")
    doc = json.loads(out)
    assert doc["mathieu"][0]["he3"]["3"]["status"] == "confirmed-absent"


def test_data_dir_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("SURFACE_CERT_DATA", str(tmp_path))
    code, _, err = run(capsys, "verify", "--euler", "1", "--route", "heisenberg", "--target", "M11",
                       "--prime", "2")
    assert code == 66 and "M11" in err
