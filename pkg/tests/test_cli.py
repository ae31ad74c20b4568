import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from milnor.cli import BATCH_SCHEMA, HILBERT_SCHEMA, REPORT_SCHEMA, main
from milnor.zoo import corpus, write_manifest


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_xyzw_text():
    code, out, _ = run("classify", "--poly", "x*y*z*w")
    assert code == 0
    assert "free" in out and "6*k-2" in out


def test_classify_json_valid():
    code, out, _ = run("classify", "--poly", "x*y*z*w", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["verdict"] == "free" and rep["exponents"] == [1, 1, 1]
    assert rep["hilbert"]["polynomial"] == "6*k-2"


def test_classify_neither():
    code, out, _ = run("classify", "--poly", "x^2*z+y^2*w", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "neither"


def test_classify_curve_from_file(tmp_path):
    path = tmp_path / "cone.txt"
    path.write_text("x^3+y^3+z^3\n")
    code, out, _ = run("classify", "--file", str(path), "--vars", "x,y,z", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["variables"] == ["x", "y", "z"] and rep["verdict"] == "smooth"


def test_hilbert_outputs():
    code, out, _ = run("hilbert", "--poly", "x^7*z+y^8+x^6*y*w+x^4*y^4", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, HILBERT_SCHEMA)
    assert rep["hilbert_polynomial"] == "34*k-122" and rep["st"] == 7
    code, out, _ = run("hilbert", "--poly", "x^7*z+y^8+x^6*y*w+x^4*y^4")
    assert "34*k-122" in out


def test_hilbert_five_variables():
    from milnor.zoo import gen

    code, out, _ = run("hilbert", "--poly", str(gen("delta4")), "--format", "json")
    assert code == 0 and json.loads(out)["hilbert_polynomial"] == "8*k^2-21*k+26"


def test_csv_format():
    code, out, _ = run("classify", "--poly", "x*y*z*w", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "value"]
    assert ["verdict", "free"] in rows


@pytest.mark.parametrize("argv", [
    ("classify", "--poly", "0"),
    ("classify", "--poly", "x^2+y"),
    ("classify", "--poly", "x+y"),
    ("classify", "--poly", "x*y*q*w"),
    ("classify", "--poly", "x^5*y+z^6+w^6", "--max-degree", "4"),
    ("classify",),
    ("classify", "--poly", "x*y*z*w", "--file", "f.txt"),
    ("classify", "--file", "/nonexistent/poly.txt"),
    ("classify", "--poly", "x*y*z*w", "--window", "-1"),
    ("bogus",),
    (),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1
    assert out == "" and "milnor: error:" in err


def test_computation_error_on_non_reduced():
    code, _, err = run("classify", "--poly", "x^2*y*z")
    assert code == 2 and "computation failed" in err


def test_determinism():
    a = run("classify", "--poly", "x^4-x*y*w^2+z*w^3", "--format", "json")
    b = run("classify", "--poly", "x^4-x*y*w^2+z*w^3", "--format", "json")
    assert a == b


def test_output_file(tmp_path):
    path = tmp_path / "rep.json"
    code, out, _ = run("classify", "--poly", "x*y*z*w", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["verdict"] == "free"


def test_batch_only_family():
    code, out, _ = run("batch", "--only", "D''", "--format", "json")
    assert code == 0
    summary = json.loads(out)
    jsonschema.validate(summary, BATCH_SCHEMA)
    assert summary["ok"] and len(summary["rows"]) == 4
    assert all(r["computed"]["verdict"] == "nearly_free" for r in summary["rows"])


def test_batch_detects_wrong_expectation(tmp_path):
    entries = [e for e in corpus() if e.name in ("xyzw", "D''(4)")]
    entries[0].expected["polynomial"] = "6*k-3"
    path = tmp_path / "bad.json"
    write_manifest(path, entries)
    code, out, _ = run("batch", "--corpus", str(path))
    assert code == 3
    assert "mismatch" in out and "1/2 members agree" in out


def test_batch_csv_and_jobs():
    code, out, _ = run("batch", "--only", "xyzw,nearly_free_quartic", "--format", "csv", "--jobs", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["name", "family", "status"]
    assert [r[2] for r in rows[1:]] == ["ok", "ok"]


def test_batch_bad_selection():
    assert run("batch", "--only", "nothing_here")[0] == 1
    assert run("batch", "--corpus", "/nonexistent.json")[0] == 1


def test_corpus_and_schema_commands():
    code, out, _ = run("corpus", "--only", "xyzw")
    assert code == 0 and json.loads(out)[0]["name"] == "xyzw"
    for which, schema in (("classify", REPORT_SCHEMA), ("hilbert", HILBERT_SCHEMA),
                          ("batch", BATCH_SCHEMA)):
        code, out, _ = run("schema", which)
        assert code == 0 and json.loads(out) == schema


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "milnor.cli", "classify", "--poly", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
