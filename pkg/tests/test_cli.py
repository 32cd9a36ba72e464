import json
import subprocess
import sys

import jsonschema
import pytest

from ulat import jsonio
from ulat.cli import main

from conftest import LATTICE_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def validated(text, schema):
    doc = json.loads(text)
    jsonschema.Draft202012Validator(jsonio.schema(schema)).validate(doc)
    return doc


def test_lattice_info(capsys):
    code, out, _ = run(capsys, "lattice", "info", str(LATTICE_DIR / "gau_2U+2A1.json"), "--json")
    doc = validated(out, "cli_lattice_info")
    assert code == 0
    assert (doc["trace_det"], doc["even"], doc["trace_signature"]) == (4, True, [4, 2])
    assert doc["discriminant_group"] == [2, 2]


def test_unimodular_lattice_info(capsys, tmp_path):
    p = tmp_path / "h.json"
    p.write_text(json.dumps({"d": -3, "gram": [["0", "1/sqrt(-3)"], ["-1/sqrt(-3)", "0"]]}))
    code, out, _ = run(capsys, "--json", "lattice", "info", str(p))
    doc = validated(out, "cli_lattice_info")
    assert abs(doc["trace_det"]) == 1 and doc["discriminant_group"] == []
    code, out, _ = run(capsys, "lattice", "info", str(p))
    assert "discriminant     trivial" in out


def test_malformed_file_exit_two(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n "d": -1,\n "gram": [[1]],\n}\n')
    code, _, err = run(capsys, "lattice", "info", str(p))
    assert code == 2 and f"{p}:4:" in err
    code, _, err = run(capsys, "lattice", "info", str(tmp_path / "missing.json"))
    assert code == 2 and ":0:" in err


def test_reflect_scan_d_minus_2(capsys):
    code, out, _ = run(capsys, "reflect", "scan", "--lattice", str(LATTICE_DIR / "sq2_U+U2+D4.json"),
                       "--norm-max", "2", "--radius", "1", "--json")
    doc = validated(out, "cli_reflect_scan")
    assert code == 0 and doc["agree"] and doc["kernel_reflections"] == 0
    assert doc["cases"] > 0


def test_jacobian_command(capsys):
    code, out, _ = run(capsys, "jacobian", "--forms", "E4,E6", "--json")
    doc = validated(out, "cli_jacobian")
    assert doc["proportional_to_delta"] and doc["scalar"] == "-3456"
    assert doc["order"] == 50 and len(doc["coefficients"]) == 50
    code, _, err = run(capsys, "jacobian", "--forms", "E4")
    assert code == 2


def test_qseries_eval(capsys):
    code, out, _ = run(capsys, "qseries", "eval", "--form", "s6", "--order", "3")
    assert out.splitlines()[1:] == ["q^1\t1", "q^2\t-6", "q^3\t9"]
    code, out, _ = run(capsys, "qseries", "eval", "--form", "e4", "--order", "2", "--json")
    doc = validated(out, "cli_qseries")
    assert doc["coefficients"] == [["0", "1"], ["1", "0"], ["2", "240"]]
    code, _, err = run(capsys, "qseries", "eval", "--form", "nope")
    assert code == 2 and "unknown form" in err


def test_tables_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "tables", "verify", "--json")
    doc = validated(out, "cli_tables")
    assert code == 0 and doc["counts"]["FAIL"] == 0 and doc["counts"]["AMBIGUOUS"] == 3
    code, out, _ = run(capsys, "tables", "verify", "--text")
    assert out.splitlines()[-1].startswith("summary: PASS")
    code, out, _ = run(capsys, "tables", "verify", "--fixture-dir", str(tmp_path), "--json")
    assert code == 0 and json.loads(out)["lines"] == []


def test_fixture_dir_environment(capsys, tmp_path, monkeypatch):
    (tmp_path / "tables").mkdir()
    monkeypatch.setenv("ULAT_FIXTURE_DIR", str(tmp_path))
    code, out, _ = run(capsys, "tables", "verify")
    assert code == 0 and out.strip() == "summary: PASS 0, FAIL 0, NA 0, AMBIGUOUS 0"


def test_output_is_byte_identical():
    cmd = [sys.executable, "-m", "ulat.cli", "tables", "verify", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def test_fail_exit_code(tmp_path, capsys):
    (tmp_path / "t.json").write_text(json.dumps({"twins": [{
        "lattice": "2U+E8", "d": -3, "kind": "full", "orthogonal": [4, 10, 12],
        "unitary": [10, 12], "source": "negative control"}]}))
    code, out, _ = run(capsys, "tables", "verify", "--fixture-dir", str(tmp_path))
    assert code == 1 and out.startswith("FAIL")
