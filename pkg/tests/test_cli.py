import json
import subprocess
import sys

import pytest

from pbzlat import algebra
from pbzlat.catalog import build
from pbzlat.cli import run


@pytest.fixture
def d4_file(tmp_path):
    path = tmp_path / "d4.json"
    algebra.save(build("D4"), path)
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_file(capsys, d4_file):
    code, out, _ = call(capsys, "classify", d4_file)
    assert code == 0
    for mark in ("BZL✓", "BZSTAR✓", "PBZSTAR✓", "AOL✓", "SDM✓", "SK✗"):
        assert mark in out


def test_check_identity(capsys):
    code, out, _ = call(capsys, "check", "D3", "--identity", "SK")
    assert code == 0 and "holds" in out
    code, out, _ = call(capsys, "check", "M3B", "--identity", "wsdm")
    assert code == 1 and "x=b, y=a" in out
    code, out, _ = call(capsys, "check", "D4", "--identity", "x <= x~~")
    assert code == 0


def test_check_json(capsys):
    code, out, _ = call(capsys, "check", "D4", "--identity", "SK", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["holds"] is False
    assert doc["witness"]["assignment"] == {"x": "b", "y": "a"}


def test_other_commands(capsys):
    assert call(capsys, "center", "D3xD2")[0] == 0
    assert call(capsys, "decompose", "D3xD2", "--element", "(0,1)")[0] == 0
    code, out, _ = call(capsys, "congruences", "D4")
    assert code == 0 and "{0} {a,b} {1}" in out
    assert call(capsys, "ideals", "D4")[0] == 0
    assert call(capsys, "rho", "D4")[0] == 0
    code, out, _ = call(capsys, "rho", "COGOTTI7")
    assert code == 1 and "(a,c)" in out
    code, out, _ = call(capsys, "enumerate", "--max-size", "4", "--class", "pbzstar", "--json")
    assert code == 0 and json.loads(out)["count"] == 4
    assert call(capsys, "catalog")[0] == 0
    assert call(capsys, "catalog", "H16")[0] == 0
    assert call(capsys, "verify", "--max-size", "5")[0] == 0


def test_usage_errors(capsys):
    assert call(capsys, "frobnicate")[0] == 2
    code, _, err = call(capsys, "classify", "NOPE")
    assert code == 2 and "NOPE" in err
    assert call(capsys, "decompose", "MO2", "--element", "a")[0] == 2
    assert call(capsys, "decompose", "D4", "--element", "zz")[0] == 2
    assert call(capsys, "enumerate", "--class", "XYZ")[0] == 2
    assert call(capsys, "rho", "D5", "--ideal", "0,a")[0] == 2


def test_bad_json_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call(capsys, "classify", str(bad))[0] == 2
    doc = algebra.to_dict(build("D3"))
    doc["tilde"] = [0, 0, 0]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    code, _, err = call(capsys, "classify", str(broken))
    assert code == 2 and "(4) at (0,)" in err


def test_congruences_without_tilde(capsys, tmp_path):
    doc = algebra.to_dict(build("O6"))
    doc["tilde"] = None
    path = tmp_path / "o6.json"
    path.write_text(json.dumps(doc))
    assert call(capsys, "congruences", str(path))[0] == 2
    assert call(capsys, "congruences", str(path), "--signature", "bi")[0] == 0


def test_dump_round_trip(capsys, tmp_path):
    for name in ("H16", "D3xD2"):
        code, out, _ = call(capsys, "classify", name, "--dump")
        assert code == 0
        path = tmp_path / "dumped.json"
        path.write_text(out)
        assert algebra.load(path).same_tables(build(name))


def test_identical_invocations(capsys):
    first = call(capsys, "classify", "H16", "--json")
    second = call(capsys, "classify", "H16", "--json")
    assert first == second
    assert call(capsys, "verify", "--max-size", "3", "--json") == call(capsys, "verify", "--max-size", "3", "--json")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pbzlat", "check", "D3", "--identity", "SK"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "holds" in proc.stdout
