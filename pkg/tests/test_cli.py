import csv
import io
import json

import pytest

from biquad import __version__, classify_field
from biquad.cli import CSV_COLUMNS, WORKERS_ENV, config_hash, main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_field_report(capsys):
    rc, out, _ = run(capsys, "field-report", "2,3")
    doc = json.loads(out)
    assert rc == 0
    assert doc["version"] == __version__ and doc["command"] == "field-report"
    assert doc["config_hash"] == config_hash({"command": "field-report", **doc["config"]})
    res = doc["result"]
    assert res["status"] == "certified"
    assert res["escalation"]["verdict"] == "NoSingularMatrix"
    assert "seconds" not in doc


def test_field_report_is_byte_stable(capsys):
    _, a, _ = run(capsys, "field-report", "(5,13)")
    _, b, _ = run(capsys, "field-report", "5, 13")
    assert a == b


def test_unit_argument_and_inconclusive_fields(capsys):
    rc, out, _ = run(capsys, "field-report", "21,55")
    assert rc == 0 and json.loads(out)["result"]["status"] == "unit-argument"
    rc, out, _ = run(capsys, "field-report", "2,15")
    res = json.loads(out)["result"]
    assert rc == 0 and res["status"] == "unit-argument"
    assert res["escalation"]["verdict"] == "SingularWitness"
    rc, out, _ = run(capsys, "field-report", "10,13")
    assert rc == 0 and json.loads(out)["result"]["status"] == "inconclusive"


def test_budget_exceeded_exit_code(capsys):
    rc, out, _ = run(capsys, "field-report", "2,23", "--budget", "2")
    assert rc == 1
    assert json.loads(out)["result"]["status"] == "budget-exceeded"


def test_bad_input_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["field-report", "2,12"])
    assert exc.value.code == 2
    assert run(capsys, "is-square", "2,3", "sqrt(5)")[0] == 2
    assert run(capsys, "decompose", "2,3", "1/2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--tmax", "0"])
    assert exc.value.code == 2


def test_element_commands(capsys):
    rc, out, _ = run(capsys, "is-square", "2,3", "2 + sqrt(3)")
    root = json.loads(out)["root"]
    f = classify_field(2, 3)
    assert rc == 0 and f.parse(root) in (f.parse("(sqrt(2) + sqrt(6))/2"), f.parse("-(sqrt(2) + sqrt(6))/2"))
    rc, out, _ = run(capsys, "indecomposable", "2,21", "7 + sqrt(42)")
    assert json.loads(out)["indecomposable"] is False
    rc, out, _ = run(capsys, "decompose", "2,3", "5", "--orbits")
    doc = json.loads(out)
    assert doc["orbit_group"] == "galois"
    pairs = doc["pairs"]
    assert pairs and all(f.parse(a) + f.parse(b) == f.from_int(5) for a, b in pairs)
    assert any(f.parse(a).in_subfield(2) is False for a, _ in pairs)
    rc, out, _ = run(capsys, "square-parts", "2,3", "4")
    parts = {f.parse(x) for x in json.loads(out)}
    assert {f.one(), f.from_int(4), f.from_int(2)} <= parts


def test_quad_and_units(capsys):
    rc, out, _ = run(capsys, "quad", "94")
    doc = json.loads(out)
    assert rc == 0 and doc["pell"]["-1"] is False
    rc, out, _ = run(capsys, "units", "3,910")
    assert json.loads(out)["result"]["case"] == "CaseI"
    rc, out, _ = run(capsys, "units", "2,3", "--tmax", "40", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["m", "s", "t"] and len(rows) > 5


def test_escalate_and_witness(capsys, tmp_path):
    path = tmp_path / "esc.json"
    rc, out, _ = run(capsys, "escalate", "2,7", "--diag", "1;2+sqrt(2);3;3+sqrt(7)", "--json", str(path))
    assert rc == 0
    assert json.loads(path.read_text()) == json.loads(out)
    rc, _, _ = run(capsys, "escalate", "2,3", "--diag", "1;1;1;1")
    assert rc == 1
    rc, out, _ = run(capsys, "witness", "21,55")
    assert json.loads(out)["result"]["branch"] == "case-i"


def test_verify_table1(capsys):
    rc, out, _ = run(capsys, "verify-table1")
    doc = json.loads(out)
    assert rc == 0 and doc["result"]["ok"] and len(doc["result"]["rows"]) == 7


def test_verify_lemma(capsys):
    rc, out, _ = run(capsys, "verify-lemma", "2coeff", "--s", "23")
    assert rc == 0 and "listed:" in out and "computed:" in out
    rc, out, _ = run(capsys, "reproduce", "5coeff", "--s", "11")
    assert rc == 1 and "MISMATCH" in out
    rc, out, _ = run(capsys, "verify-lemma", "5coeff", "--s", "11", "--with-omitted", "--json")
    assert rc == 0 and json.loads(out)["result"]["ok"]


def _sweep(capsys, *extra):
    rc, out, _ = run(capsys, "sweep", "--tmax", "40", *extra)
    return rc, out


def test_sweep_csv(capsys):
    rc, out = _sweep(capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rc == 0
    assert tuple(rows[0]) == CSV_COLUMNS
    keys = [(int(r[0]), int(r[1])) for r in rows[1:]]
    assert keys == sorted(keys) and (2, 3) in keys
    assert all(int(r[2]) <= 40 for r in rows[1:])


def test_sweep_checkpoint_resume_is_byte_stable(capsys, tmp_path):
    ck = tmp_path / "ck.jsonl"
    _, full = _sweep(capsys)
    rc, first = _sweep(capsys, "--checkpoint", str(ck))
    assert first == full
    lines = ck.read_text().splitlines(keepends=True)
    # simulate an interrupted run: drop half the records and leave a torn line
    ck.write_text("".join(lines[: len(lines) // 2]) + lines[-1][:25])
    rc, resumed = _sweep(capsys, "--checkpoint", str(ck))
    assert rc == 0 and resumed == full
    assert len(ck.read_text().splitlines()) == len(lines)


def test_sweep_workers_from_environment(capsys, monkeypatch, tmp_path):
    _, serial = _sweep(capsys)
    monkeypatch.setenv(WORKERS_ENV, "2")
    out_path = tmp_path / "sweep.csv"
    rc, _ = _sweep(capsys, "--out", str(out_path))
    assert rc == 0 and out_path.read_text() == serial


def test_sweep_json_and_timing(capsys):
    rc, out = _sweep(capsys, "--format", "json", "--no-escalate")
    doc = json.loads(out)
    assert rc == 0 and doc["config"]["escalate"] is False
    assert all("_seconds" not in r for r in doc["result"])
    rc, out = _sweep(capsys, "--timing")
    assert out.splitlines()[0].endswith(",seconds")
